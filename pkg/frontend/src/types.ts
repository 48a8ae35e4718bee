/** Wire types mirroring the scoring service's /v1 JSON schema. */

export const TRAITS = [
  "sincerity",
  "excitement",
  "competence",
  "ruggedness",
  "sophistication",
] as const;

export type Trait = (typeof TRAITS)[number];

export type ConsistencyLevel =
  | "strongly_consistent"
  | "consistent"
  | "not_consistent";

export interface TargetSpec {
  company?: string;
  label_vector?: number[];
  rank_vector?: number[];
  confidences?: number[];
}

export interface AnalyzeOptions {
  k: number;
  seed: number;
  method?: string;
  sentence_sim?: "full" | "hamming_only";
}

export interface AnalyzeRequest {
  text: string;
  target: TargetSpec;
  central_aliases?: string[];
  central_entities?: string[];
  options: AnalyzeOptions;
}

export interface ProfilePayload {
  company: string;
  label_vector: number[];
  rank_vector: number[];
  confidences: number[] | null;
  static_post_count: number;
}

export interface AssessmentPayload {
  traits: string[];
  confidences: number[];
  label_vector: number[];
  rank_vector: number[];
}

export interface ConsistencyPayload {
  bin_label_sim: number;
  rank_label_sim: number;
  level: ConsistencyLevel;
}

export interface RankedSentencePayload {
  sentence_index: number;
  text: string;
  relevance: number;
  whether_neg: boolean;
  neg_scr: number;
  pos_scr: number;
  whether_central: boolean;
  central_mentions: number;
  sentence_bin_sim: number;
}

export interface AnalyzeResponse {
  bundle_version: string;
  target: ProfilePayload;
  assessment: AssessmentPayload;
  consistency: ConsistencyPayload;
  sentences: RankedSentencePayload[];
}
