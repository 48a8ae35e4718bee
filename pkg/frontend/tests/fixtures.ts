/** Mocked API fixture mirroring the ranking service contract: a
 * four-sentence article whose second and fourth sentences are the
 * negative+central rewrites (relevance 6). */

import type { AnalyzeResponse } from "../src/types";

export const S0 = "The sky stayed blue over the campus.";
export const S1 = "Acme faced a terrible setback with the delayed launch.";
export const S2 = "A bakery opened nearby with seasonal bread.";
export const S3 = "Critics called the Acme rollout a disappointing failure.";

export const FIXTURE_TEXT = [S0, S1, S2, S3].join(" ");

export const FIXTURE_RESPONSE: AnalyzeResponse = {
  bundle_version: "fixture-bundle-0001",
  target: {
    company: "Acme",
    label_vector: [1, 0, 1, 0, 0],
    rank_vector: [1, 4, 2, 5, 3],
    confidences: [0.9, 0.2, 0.8, 0.1, 0.3],
    static_post_count: 4,
  },
  assessment: {
    traits: ["sincerity", "excitement", "competence", "ruggedness", "sophistication"],
    confidences: [0.81, 0.34, 0.66, 0.12, 0.4],
    label_vector: [1, 0, 1, 0, 0],
    rank_vector: [1, 4, 2, 5, 3],
  },
  consistency: {
    bin_label_sim: 1.0,
    rank_label_sim: 0.92,
    level: "strongly_consistent",
  },
  sentences: [
    {
      sentence_index: 3,
      text: S3,
      relevance: 6,
      whether_neg: true,
      neg_scr: 0.41,
      pos_scr: 0.0,
      whether_central: true,
      central_mentions: 1,
      sentence_bin_sim: 0.6,
    },
    {
      sentence_index: 1,
      text: S1,
      relevance: 6,
      whether_neg: true,
      neg_scr: 0.37,
      pos_scr: 0.0,
      whether_central: true,
      central_mentions: 1,
      sentence_bin_sim: 0.8,
    },
    {
      sentence_index: 0,
      text: S0,
      relevance: 1,
      whether_neg: false,
      neg_scr: 0.0,
      pos_scr: 0.0,
      whether_central: false,
      central_mentions: 0,
      sentence_bin_sim: 0.8,
    },
  ],
};
