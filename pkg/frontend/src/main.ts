/** DOM glue: wires the textarea, target picker and analyze button to the
 * pure state machine and render helpers. */

import { createApiClient } from "./api.js";
import {
  analyzeFailed,
  analyzeStarted,
  analyzeSucceeded,
  canAnalyze,
  initialState,
  setTarget,
  setText,
  targetSpec,
  toggleTrait,
  type EditorState,
} from "./state.js";
import {
  renderArticle,
  renderErrorBanner,
  renderResults,
  renderTargetSummary,
} from "./render.js";
import { TRAITS } from "./types.js";

declare global {
  interface Window {
    BRANDGAUGE_API?: string;
  }
}

export function mount(root: HTMLElement): void {
  const api = createApiClient(window.BRANDGAUGE_API ?? "");
  let state: EditorState = initialState();

  root.innerHTML = `
    <header><h1>brandgauge editor</h1></header>
    <section class="target-picker">
      <label>Company <input id="company-input" placeholder="e.g. Acme"></label>
      <button id="company-load">Load profile</button>
      <span class="or">or set traits manually:</span>
      <span id="trait-toggles"></span>
      <span id="target-summary"></span>
    </section>
    <section class="editor">
      <textarea id="article-input" rows="14" placeholder="Paste a web article."></textarea>
      <button id="analyze-button" disabled>Analyze</button>
    </section>
    <div id="error-slot"></div>
    <section id="article-view"></section>
    <section id="results"></section>
  `;

  const textarea = root.querySelector<HTMLTextAreaElement>("#article-input")!;
  const analyzeButton = root.querySelector<HTMLButtonElement>("#analyze-button")!;
  const companyInput = root.querySelector<HTMLInputElement>("#company-input")!;
  const companyLoad = root.querySelector<HTMLButtonElement>("#company-load")!;
  const togglesSlot = root.querySelector<HTMLElement>("#trait-toggles")!;

  TRAITS.forEach((trait, i) => {
    const btn = document.createElement("button");
    btn.className = "trait-toggle";
    btn.dataset.trait = trait;
    btn.textContent = trait;
    btn.addEventListener("click", () => {
      update(toggleTrait(state, i));
    });
    togglesSlot.appendChild(btn);
  });

  function paint(): void {
    analyzeButton.disabled = !canAnalyze(state);
    analyzeButton.textContent = state.pending ? "Analyzing…" : "Analyze";
    root.querySelector("#error-slot")!.innerHTML = renderErrorBanner(state);
    root.querySelector("#target-summary")!.innerHTML = renderTargetSummary(state);
    root.querySelector("#article-view")!.innerHTML = renderArticle(state);
    root.querySelector("#results")!.innerHTML = renderResults(state);
    togglesSlot.querySelectorAll<HTMLButtonElement>(".trait-toggle").forEach((btn, i) => {
      const on = state.target.mode === "manual" && state.target.toggles[i];
      btn.classList.toggle("on", on);
    });
  }

  function update(next: EditorState): void {
    state = next;
    paint();
  }

  textarea.addEventListener("input", () => update(setText(state, textarea.value)));

  companyLoad.addEventListener("click", async () => {
    const company = companyInput.value.trim();
    if (!company) return;
    try {
      const profile = await api.getProfile(company);
      update(setTarget(state, { mode: "company", company: profile.company }));
    } catch (err) {
      update({ ...state, error: err instanceof Error ? err.message : String(err) });
    }
  });

  analyzeButton.addEventListener("click", async () => {
    if (!canAnalyze(state)) return;
    const next = analyzeStarted(state);
    const token = next.requestToken;
    const analyzedText = next.text;
    update(next);
    try {
      const response = await api.analyze({
        text: analyzedText,
        target: targetSpec(next.target),
        options: { k: 3, seed: 0 },
      });
      update(analyzeSucceeded(state, token, analyzedText, response));
    } catch (err) {
      update(analyzeFailed(state, token, err instanceof Error ? err.message : String(err)));
    }
  });

  paint();
}

if (typeof document !== "undefined") {
  const root = document.getElementById("app");
  if (root) mount(root);
}
