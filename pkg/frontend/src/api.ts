/** Thin typed client for the ontonav service. */

import type {
  ArticleDetail,
  Language,
  NodeDetail,
  ProposalKind,
  ProposalReceipt,
  SearchPayload,
  TreePayload,
  VoteReceipt,
} from './types.js';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

/** Non-2xx reply, decoded from the service's error envelope when present. */
export class ApiRequestError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, code: string, message: string) {
    super(message);
    this.name = 'ApiRequestError';
    this.status = status;
    this.code = code;
  }
}

export interface ProposalInput {
  node: string;
  text: string;
  kind: ProposalKind;
  member: string;
}

export class ApiClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;
  // one live request per GET URL; concurrent callers share the promise
  private readonly inflight = new Map<string, Promise<unknown>>();

  constructor(base: string, fetchFn?: FetchLike) {
    this.base = base.replace(/\/+$/, '');
    this.fetchFn = fetchFn ?? ((url, init) => fetch(url, init));
  }

  getTree(): Promise<TreePayload> {
    return this.get<TreePayload>('/tree');
  }

  getNode(code: string): Promise<NodeDetail> {
    return this.get<NodeDetail>(`/node/${encodeURIComponent(code)}`);
  }

  search(query: string, lang: Language): Promise<SearchPayload> {
    return this.get<SearchPayload>(`/search?q=${encodeURIComponent(query)}&lang=${lang}`);
  }

  getArticle(key: string): Promise<ArticleDetail> {
    return this.get<ArticleDetail>(`/articles/${encodeURIComponent(key)}`);
  }

  submitProposal(input: ProposalInput): Promise<ProposalReceipt> {
    return this.post<ProposalReceipt>('/proposals', input);
  }

  vote(proposalId: string, member: string, verdict: 'approve' | 'reject'): Promise<VoteReceipt> {
    return this.post<VoteReceipt>(`/proposals/${encodeURIComponent(proposalId)}/votes`, {
      member,
      verdict,
    });
  }

  private get<T>(path: string): Promise<T> {
    const url = this.base + path;
    const pending = this.inflight.get(url);
    if (pending !== undefined) {
      return pending as Promise<T>;
    }
    const request = this.send<T>(url, undefined).finally(() => {
      this.inflight.delete(url);
    });
    this.inflight.set(url, request);
    return request;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.send<T>(this.base + path, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
    });
  }

  private async send<T>(url: string, init: RequestInit | undefined): Promise<T> {
    const response = await this.fetchFn(url, init);
    if (!response.ok) {
      throw await decodeError(response);
    }
    return (await response.json()) as T;
  }
}

async function decodeError(response: Response): Promise<ApiRequestError> {
  let code = 'http-error';
  let message = `request failed with status ${response.status}`;
  try {
    const body = (await response.json()) as { error?: { code?: string; message?: string } };
    if (body.error) {
      code = body.error.code ?? code;
      message = body.error.message ?? message;
    }
  } catch {
    // non-JSON body, keep the generic message
  }
  return new ApiRequestError(response.status, code, message);
}
