/**
 * What-if editing state machine.
 *
 * Keystrokes are debounced; each settled edit fires one round of
 * predict + attribute requests stamped with a sequence number, and a
 * response is applied only if no newer round has started since. That
 * guarantee is what keeps the rendered attribution aligned with the
 * rendered text no matter how responses interleave.
 */

import { ApiRequestError, type ApiClient } from "./api.js";
import type { FeatureAttribution, Prediction, TokenAttribution } from "./types.js";

export interface ViewState {
  text: string;
  /** Prediction for the pre-edit baseline (selected instance or first result). */
  baseline: Prediction | null;
  prediction: Prediction | null;
  tokenAttribution: TokenAttribution | null;
  featureAttribution: FeatureAttribution | null;
  pending: boolean;
  /** Set when attribution is unavailable (e.g. token cap exceeded). */
  attributionWarning: string | null;
  /** Set when the server is unreachable; last good panels stay visible. */
  error: string | null;
}

export interface Scheduler {
  setTimeout(fn: () => void, ms: number): unknown;
  clearTimeout(handle: unknown): void;
}

const defaultScheduler: Scheduler = {
  setTimeout: (fn, ms) => setTimeout(fn, ms),
  clearTimeout: (h) => clearTimeout(h as Parameters<typeof clearTimeout>[0]),
};

export const DEBOUNCE_MS = 300;

export class WhatIfController {
  readonly state: ViewState = {
    text: "",
    baseline: null,
    prediction: null,
    tokenAttribution: null,
    featureAttribution: null,
    pending: false,
    attributionWarning: null,
    error: null,
  };

  /** Total rounds dispatched to the API (exposed for tests). */
  roundsStarted = 0;

  private seq = 0;
  private timer: unknown = null;

  constructor(
    private readonly api: ApiClient,
    private readonly onChange: (state: ViewState) => void = () => {},
    private readonly scheduler: Scheduler = defaultScheduler,
    private readonly debounceMs: number = DEBOUNCE_MS,
  ) {}

  /** Load an instance (or scratch text) immediately and set the baseline. */
  select(text: string): Promise<void> {
    this.cancelTimer();
    this.state.text = text;
    this.state.baseline = null;
    return this.dispatch(text, true);
  }

  /** Debounced edit: only the final text after a typing burst is sent. */
  edit(text: string): void {
    this.state.text = text;
    this.cancelTimer();
    this.timer = this.scheduler.setTimeout(() => {
      this.timer = null;
      void this.dispatch(text, false);
    }, this.debounceMs);
    this.notify();
  }

  private cancelTimer(): void {
    if (this.timer !== null) {
      this.scheduler.clearTimeout(this.timer);
      this.timer = null;
    }
  }

  private notify(): void {
    this.onChange(this.state);
  }

  private async dispatch(text: string, asBaseline: boolean): Promise<void> {
    const round = ++this.seq;
    this.roundsStarted += 1;
    this.state.pending = true;
    this.notify();

    const fresh = () => round === this.seq;
    try {
      const prediction = await this.api.predict(text);
      if (!fresh()) return;
      this.state.prediction = prediction;
      if (asBaseline || this.state.baseline === null) {
        this.state.baseline = prediction;
      }
      this.state.error = null;

      try {
        const [tokens, features] = await Promise.all([
          this.api.attributeTokens(text),
          this.api.attributeFeatures(text),
        ]);
        if (!fresh()) return;
        this.state.tokenAttribution = tokens;
        this.state.featureAttribution = features;
        this.state.attributionWarning = null;
      } catch (err) {
        if (!fresh()) return;
        // Prediction stands; attribution panels get disabled with a note.
        this.state.tokenAttribution = null;
        this.state.featureAttribution = null;
        this.state.attributionWarning =
          err instanceof ApiRequestError ? `${err.code}: ${err.message}` : String(err);
      }
    } catch (err) {
      if (!fresh()) return;
      this.state.error = err instanceof ApiRequestError ? err.message : String(err);
    } finally {
      if (fresh()) {
        this.state.pending = false;
        this.notify();
      }
    }
  }
}

/** Score delta shown next to the prediction during what-if editing. */
export function scoreDelta(state: ViewState): number | null {
  if (!state.baseline || !state.prediction) return null;
  return state.prediction.score - state.baseline.score;
}
