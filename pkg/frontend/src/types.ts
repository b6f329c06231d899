/** Payload shapes of the review HTTP API. */

export type Status = "PENDING" | "AUTO" | "VERIFIED" | "CORRECTED";

export type Method = "SUBSTRING" | "COSINE" | "LEVENSHTEIN" | "LEMMATIZER";

export interface Candidate {
  token_index: number;
  surface: string;
  method_hits: Method[];
  cosine_score: number | null;
  edit_distance: number | null;
}

export interface Annotation {
  context_id: string;
  lemma_key: string;
  context_text: string;
  tokens: string[];
  candidates: Candidate[];
  chosen_index: number | null;
  status: Status;
  multi_occurrence: boolean;
  revision: number;
}

export interface Progress {
  PENDING: number;
  AUTO: number;
  VERIFIED: number;
  CORRECTED: number;
}

export interface ReviewRequest {
  action: "confirm" | "correct";
  reviewer: string;
  token_index?: number;
  revision?: number;
}
