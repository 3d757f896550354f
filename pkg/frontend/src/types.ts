// Wire types of the review service protocol (anea-review/1).

export interface ScoreDisplay {
  quality: string;
  term_similarity: string;
  label_similarity: string;
}

export interface CategoryView {
  id: string;
  label: string;
  terms: string[];
  size: number;
  quality: number;
  term_similarity: number;
  label_similarity: number;
  combined_similarity: number;
  avg_label_distance: number;
  display: ScoreDisplay;
}

export interface StatePayload {
  protocol: string;
  state_hash: string;
  categories: CategoryView[];
  unassigned: string[];
}

export interface MutationResponse {
  state_hash: string;
  categories: CategoryView[];
  unassigned: string[];
}

export interface EditLogEntry {
  seq: number;
  op: string;
  [key: string]: unknown;
}

export interface ExportPayload {
  protocol: string;
  document: unknown;
  state_hash: string;
  edit_log: EditLogEntry[];
}
