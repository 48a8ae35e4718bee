/** Editor state machine. Pure transitions so the what-if loop is testable
 * without a DOM: highlights stay attached to the analyzed text (keyed by a
 * text hash) and any edit or target switch marks the state dirty, which
 * clears them until the next analyze round trip. */

import type { AnalyzeResponse, TargetSpec } from "./types.js";

export type TargetSelection =
  | { mode: "company"; company: string }
  | { mode: "manual"; toggles: boolean[] };

export interface EditorState {
  text: string;
  target: TargetSelection;
  lastResponse: AnalyzeResponse | null;
  /** hash of the text the last response was computed for */
  analyzedTextHash: number | null;
  dirty: boolean;
  pending: boolean;
  error: string | null;
  /** supersede token: only the latest in-flight analyze may land */
  requestToken: number;
}

export function initialState(): EditorState {
  return {
    text: "",
    target: { mode: "manual", toggles: [false, false, false, false, false] },
    lastResponse: null,
    analyzedTextHash: null,
    dirty: false,
    pending: false,
    error: null,
    requestToken: 0,
  };
}

/** djb2 over UTF-16 code units; collisions are harmless (drift detection only). */
export function textHash(text: string): number {
  let h = 5381;
  for (let i = 0; i < text.length; i++) {
    h = ((h << 5) + h + text.charCodeAt(i)) | 0;
  }
  return h;
}

export function canAnalyze(state: EditorState): boolean {
  return state.text.trim().length > 0 && !state.pending;
}

/** Highlights are valid only when not dirty and the response belongs to
 * the current text. */
export function highlightsActive(state: EditorState): boolean {
  return (
    !state.dirty &&
    state.lastResponse !== null &&
    state.analyzedTextHash === textHash(state.text)
  );
}

export function setText(state: EditorState, text: string): EditorState {
  if (text === state.text) return state;
  return { ...state, text, dirty: true, error: null };
}

export function setTarget(state: EditorState, target: TargetSelection): EditorState {
  return { ...state, target, dirty: true, error: null };
}

export function toggleTrait(state: EditorState, index: number): EditorState {
  const toggles =
    state.target.mode === "manual"
      ? [...state.target.toggles]
      : [false, false, false, false, false];
  toggles[index] = !toggles[index];
  return setTarget(state, { mode: "manual", toggles });
}

export function targetSpec(target: TargetSelection): TargetSpec {
  if (target.mode === "company") return { company: target.company };
  return { label_vector: target.toggles.map((t) => (t ? 1 : 0)) };
}

export function analyzeStarted(state: EditorState): EditorState {
  return {
    ...state,
    pending: true,
    error: null,
    requestToken: state.requestToken + 1,
  };
}

export function analyzeSucceeded(
  state: EditorState,
  token: number,
  analyzedText: string,
  response: AnalyzeResponse,
): EditorState {
  if (token !== state.requestToken) return state; // superseded
  return {
    ...state,
    pending: false,
    lastResponse: response,
    analyzedTextHash: textHash(analyzedText),
    dirty: state.text !== analyzedText,
    error: null,
  };
}

export function analyzeFailed(
  state: EditorState,
  token: number,
  message: string,
): EditorState {
  if (token !== state.requestToken) return state;
  // state (text, target, previous response) is preserved on failure
  return { ...state, pending: false, error: message };
}
