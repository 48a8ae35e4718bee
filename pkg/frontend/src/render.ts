/** Pure render helpers: state in, HTML strings out. Every number shown
 * comes straight from an AnalyzeResponse field. */

import { highlightsActive, type EditorState } from "./state.js";
import { TRAITS, type AnalyzeResponse, type RankedSentencePayload } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

const LEVEL_LABELS: Record<string, string> = {
  strongly_consistent: "strongly consistent",
  consistent: "consistent",
  not_consistent: "not consistent",
};

export function renderTraitBars(response: AnalyzeResponse): string {
  const rows = TRAITS.map((trait, i) => {
    const conf = response.assessment.confidences[i];
    const present = response.assessment.label_vector[i] === 1;
    const pct = (conf * 100).toFixed(1);
    return (
      `<div class="trait-row${present ? " trait-present" : ""}">` +
      `<span class="trait-name">${trait}</span>` +
      `<span class="trait-bar"><span class="trait-fill" style="width:${pct}%"></span></span>` +
      `<span class="trait-conf">${conf.toFixed(3)}</span>` +
      `<span class="trait-rank">#${response.assessment.rank_vector[i]}</span>` +
      `</div>`
    );
  });
  return `<div class="trait-bars">${rows.join("")}</div>`;
}

export function renderConsistencyBadge(response: AnalyzeResponse): string {
  const c = response.consistency;
  const label = LEVEL_LABELS[c.level] ?? c.level;
  return (
    `<span class="badge badge-${c.level}" title="binLabelSim ${c.bin_label_sim.toFixed(3)}, ` +
    `rankLabelSim ${c.rank_label_sim.toFixed(3)}">${label}</span>`
  );
}

export function sentenceChips(s: RankedSentencePayload): string {
  const chips = [`<span class="chip chip-relevance">${s.relevance}</span>`];
  if (s.whether_neg) chips.push(`<span class="chip chip-neg">NEG</span>`);
  if (s.whether_central) chips.push(`<span class="chip chip-central">CENTRAL</span>`);
  if (s.sentence_bin_sim <= 0.5) {
    chips.push(`<span class="chip chip-inconsistent">INCONSISTENT</span>`);
  }
  return chips.join("");
}

/** Locate each returned sentence inside the article by its text, in
 * document order; unmatched sentences (should not happen when the state
 * is clean) are skipped. */
export function locateSentences(
  text: string,
  sentences: RankedSentencePayload[],
): { sentence: RankedSentencePayload; start: number; end: number }[] {
  const byIndex = [...sentences].sort((a, b) => a.sentence_index - b.sentence_index);
  const out: { sentence: RankedSentencePayload; start: number; end: number }[] = [];
  let cursor = 0;
  for (const sentence of byIndex) {
    const at = text.indexOf(sentence.text, cursor);
    if (at < 0) continue;
    out.push({ sentence, start: at, end: at + sentence.text.length });
    cursor = at + sentence.text.length;
  }
  return out;
}

/** The article with the top-k sentences wrapped in <mark> plus chips.
 * Falls back to plain text when the state is dirty. */
export function renderArticle(state: EditorState): string {
  const text = state.text;
  if (!highlightsActive(state) || !state.lastResponse) {
    return `<div class="article">${escapeHtml(text)}</div>`;
  }
  const located = locateSentences(text, state.lastResponse.sentences);
  let html = "";
  let cursor = 0;
  for (const { sentence, start, end } of located) {
    html += escapeHtml(text.slice(cursor, start));
    html +=
      `<mark class="hl hl-rel-${sentence.relevance}" data-sentence-index="${sentence.sentence_index}">` +
      escapeHtml(text.slice(start, end)) +
      sentenceChips(sentence) +
      `</mark>`;
    cursor = end;
  }
  html += escapeHtml(text.slice(cursor));
  return `<div class="article">${html}</div>`;
}

export function renderRewriteList(response: AnalyzeResponse): string {
  const items = response.sentences.map(
    (s) =>
      `<li data-sentence-index="${s.sentence_index}">` +
      sentenceChips(s) +
      `<span class="rewrite-text">${escapeHtml(s.text)}</span>` +
      `<span class="rewrite-scores">negScr ${s.neg_scr.toFixed(3)} · mentions ${s.central_mentions} · sim ${s.sentence_bin_sim.toFixed(2)}</span>` +
      `</li>`,
  );
  return `<ol class="rewrite-list">${items.join("")}</ol>`;
}

export function renderTargetSummary(state: EditorState): string {
  if (state.target.mode === "company") {
    return `<span class="target-summary">target: ${escapeHtml(state.target.company)}</span>`;
  }
  const bits = state.target.toggles.map((t) => (t ? "1" : "0")).join("");
  return `<span class="target-summary">target label ${bits}</span>`;
}

export function renderErrorBanner(state: EditorState): string {
  if (!state.error) return "";
  return `<div class="error-banner" role="alert">${escapeHtml(state.error)}</div>`;
}

/** Everything below the editor: result panel or placeholder. */
export function renderResults(state: EditorState): string {
  const response = state.lastResponse;
  if (!response) return `<div class="placeholder">Paste an article and analyze.</div>`;
  const stale = !highlightsActive(state)
    ? `<div class="stale-note">edited since last analysis — re-analyze to refresh</div>`
    : "";
  return (
    stale +
    `<div class="results" data-bundle-version="${escapeHtml(response.bundle_version)}">` +
    renderConsistencyBadge(response) +
    renderTraitBars(response) +
    renderRewriteList(response) +
    `</div>`
  );
}
