/** Wire types for the ontonav HTTP service, mirrored field for field. */

export type Language = 'en' | 'fr';

export interface NodeSummary {
  code: string;
  label_en: string;
  label_fr: string;
  kind: string;
}

export interface TreeNode extends NodeSummary {
  parent: string | null;
  children: string[];
}

export interface TreePayload {
  root: string;
  nodes: TreeNode[];
}

export interface KeywordRow {
  lemma: string;
  origin: string;
  source: string;
}

export interface NeighborRow {
  code: string;
  label_en: string;
  weight: number;
  provenance: string;
}

export interface Metaquery {
  provider: string;
  terms: string[];
  url: string;
}

export interface NodeDetail extends NodeSummary {
  keywords: KeywordRow[];
  parent: NodeSummary | null;
  children: NodeSummary[];
  neighbors: NeighborRow[];
  metaqueries: Metaquery[];
}

export interface ScoredNode extends NodeSummary {
  score: number;
}

export interface ArticleHit {
  key: string;
  title: string;
  year: number | null;
  venue: string;
  score: number;
}

export interface SearchMiss {
  query: string;
  lang: string;
  message: string;
}

export interface SearchPayload {
  query: string;
  lang: string;
  nodes: ScoredNode[];
  articles: ArticleHit[];
  miss: SearchMiss | null;
}

export interface ArticleDetail {
  key: string;
  title: string;
  authors: string[];
  year: number | null;
  venue: string;
  uri: string | null;
  assigned: string[];
  orphan_host: string | null;
  scholar_url: string | null;
}

export type ProposalKind = 'correction' | 'specification';

export interface ProposalReceipt {
  id: string;
  status: string;
}

export interface VoteReceipt {
  status: string;
}

export interface ErrorPayload {
  error: {
    code: string;
    message: string;
  };
}
