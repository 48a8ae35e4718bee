import { describe, expect, it } from "vitest";

import {
  analyzeFailed,
  analyzeStarted,
  analyzeSucceeded,
  canAnalyze,
  highlightsActive,
  initialState,
  setTarget,
  setText,
  targetSpec,
  textHash,
  toggleTrait,
} from "../src/state";
import { FIXTURE_RESPONSE, FIXTURE_TEXT } from "./fixtures";

function analyzedState() {
  let s = setText(initialState(), FIXTURE_TEXT);
  s = setTarget(s, { mode: "company", company: "Acme" });
  s = analyzeStarted(s);
  return analyzeSucceeded(s, s.requestToken, FIXTURE_TEXT, FIXTURE_RESPONSE);
}

describe("editor state machine", () => {
  it("starts with analyze disabled (empty text)", () => {
    expect(canAnalyze(initialState())).toBe(false);
  });

  it("whitespace-only text keeps analyze disabled", () => {
    expect(canAnalyze(setText(initialState(), "   \n "))).toBe(false);
  });

  it("non-empty text enables analyze", () => {
    expect(canAnalyze(setText(initialState(), "Some article."))).toBe(true);
  });

  it("successful analyze activates highlights", () => {
    const s = analyzedState();
    expect(s.pending).toBe(false);
    expect(s.dirty).toBe(false);
    expect(highlightsActive(s)).toBe(true);
    expect(s.lastResponse).toBe(FIXTURE_RESPONSE);
  });

  it("editing text sets dirty and deactivates highlights", () => {
    const s = setText(analyzedState(), FIXTURE_TEXT + " More.");
    expect(s.dirty).toBe(true);
    expect(highlightsActive(s)).toBe(false);
    // the response itself is preserved for the results panel
    expect(s.lastResponse).not.toBeNull();
  });

  it("switching target marks dirty", () => {
    const s = setTarget(analyzedState(), {
      mode: "manual",
      toggles: [true, false, true, false, false],
    });
    expect(s.dirty).toBe(true);
    expect(highlightsActive(s)).toBe(false);
  });

  it("manual toggles build a label_vector target", () => {
    let s = initialState();
    s = toggleTrait(s, 0);
    s = toggleTrait(s, 2);
    expect(targetSpec(s.target)).toEqual({ label_vector: [1, 0, 1, 0, 0] });
  });

  it("company target builds a company spec", () => {
    expect(targetSpec({ mode: "company", company: "Acme" })).toEqual({
      company: "Acme",
    });
  });

  it("failure preserves state and sets the banner message", () => {
    let s = setText(initialState(), FIXTURE_TEXT);
    s = analyzeStarted(s);
    const failed = analyzeFailed(s, s.requestToken, "target.company: unknown");
    expect(failed.error).toBe("target.company: unknown");
    expect(failed.text).toBe(FIXTURE_TEXT);
    expect(failed.pending).toBe(false);
    expect(failed.lastResponse).toBeNull();
  });

  it("a superseded response does not land", () => {
    let s = setText(initialState(), FIXTURE_TEXT);
    s = analyzeStarted(s);
    const staleToken = s.requestToken;
    s = analyzeStarted(s); // user clicked again; new request in flight
    const landed = analyzeSucceeded(s, staleToken, FIXTURE_TEXT, FIXTURE_RESPONSE);
    expect(landed).toBe(s);
    expect(landed.lastResponse).toBeNull();
  });

  it("a response for older text lands dirty", () => {
    let s = setText(initialState(), FIXTURE_TEXT);
    s = analyzeStarted(s);
    const token = s.requestToken;
    s = setText(s, FIXTURE_TEXT + " Edited during flight.");
    const landed = analyzeSucceeded(s, token, FIXTURE_TEXT, FIXTURE_RESPONSE);
    expect(landed.dirty).toBe(true);
    expect(highlightsActive(landed)).toBe(false);
  });

  it("textHash is stable and order-sensitive", () => {
    expect(textHash("abc")).toBe(textHash("abc"));
    expect(textHash("abc")).not.toBe(textHash("acb"));
  });
});
