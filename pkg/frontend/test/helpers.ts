import { readFileSync } from 'node:fs';

/** Parse a frozen payload captured from a live service run. */
export function fixture<T>(name: string): T {
  const url = new URL(`./fixtures/${name}`, import.meta.url);
  return JSON.parse(readFileSync(url, 'utf-8')) as T;
}

export interface MetaqueryFixture {
  [code: string]: {
    terms: string[];
    urls: Record<string, string>;
  };
}

export type JsonBody = Record<string, unknown>;

/** fetch stand-in that replays queued JSON replies and records every call. */
export function fakeFetch(
  replies: Array<{ status?: number; body: JsonBody } | Error>,
): {
  fn: (url: string, init?: RequestInit) => Promise<Response>;
  calls: Array<{ url: string; init: RequestInit | undefined }>;
} {
  const calls: Array<{ url: string; init: RequestInit | undefined }> = [];
  const queue = [...replies];
  const fn = (url: string, init?: RequestInit): Promise<Response> => {
    calls.push({ url, init });
    const next = queue.length > 1 ? queue.shift() : queue[0];
    if (next === undefined) {
      return Promise.reject(new Error('no reply queued'));
    }
    if (next instanceof Error) {
      return Promise.reject(next);
    }
    return Promise.resolve(
      new Response(JSON.stringify(next.body), {
        status: next.status ?? 200,
        headers: { 'content-type': 'application/json' },
      }),
    );
  };
  return { fn, calls };
}
