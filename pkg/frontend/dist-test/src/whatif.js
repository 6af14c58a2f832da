/**
 * What-if editing state machine.
 *
 * Keystrokes are debounced; each settled edit fires one round of
 * predict + attribute requests stamped with a sequence number, and a
 * response is applied only if no newer round has started since. That
 * guarantee is what keeps the rendered attribution aligned with the
 * rendered text no matter how responses interleave.
 */
import { ApiRequestError } from "./api.js";
const defaultScheduler = {
    setTimeout: (fn, ms) => setTimeout(fn, ms),
    clearTimeout: (h) => clearTimeout(h),
};
export const DEBOUNCE_MS = 300;
export class WhatIfController {
    constructor(api, onChange = () => { }, scheduler = defaultScheduler, debounceMs = DEBOUNCE_MS) {
        this.api = api;
        this.onChange = onChange;
        this.scheduler = scheduler;
        this.debounceMs = debounceMs;
        this.state = {
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
        this.roundsStarted = 0;
        this.seq = 0;
        this.timer = null;
    }
    /** Load an instance (or scratch text) immediately and set the baseline. */
    select(text) {
        this.cancelTimer();
        this.state.text = text;
        this.state.baseline = null;
        return this.dispatch(text, true);
    }
    /** Debounced edit: only the final text after a typing burst is sent. */
    edit(text) {
        this.state.text = text;
        this.cancelTimer();
        this.timer = this.scheduler.setTimeout(() => {
            this.timer = null;
            void this.dispatch(text, false);
        }, this.debounceMs);
        this.notify();
    }
    cancelTimer() {
        if (this.timer !== null) {
            this.scheduler.clearTimeout(this.timer);
            this.timer = null;
        }
    }
    notify() {
        this.onChange(this.state);
    }
    async dispatch(text, asBaseline) {
        const round = ++this.seq;
        this.roundsStarted += 1;
        this.state.pending = true;
        this.notify();
        const fresh = () => round === this.seq;
        try {
            const prediction = await this.api.predict(text);
            if (!fresh())
                return;
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
                if (!fresh())
                    return;
                this.state.tokenAttribution = tokens;
                this.state.featureAttribution = features;
                this.state.attributionWarning = null;
            }
            catch (err) {
                if (!fresh())
                    return;
                // Prediction stands; attribution panels get disabled with a note.
                this.state.tokenAttribution = null;
                this.state.featureAttribution = null;
                this.state.attributionWarning =
                    err instanceof ApiRequestError ? `${err.code}: ${err.message}` : String(err);
            }
        }
        catch (err) {
            if (!fresh())
                return;
            this.state.error = err instanceof ApiRequestError ? err.message : String(err);
        }
        finally {
            if (fresh()) {
                this.state.pending = false;
                this.notify();
            }
        }
    }
}
/** Score delta shown next to the prediction during what-if editing. */
export function scoreDelta(state) {
    if (!state.baseline || !state.prediction)
        return null;
    return state.prediction.score - state.baseline.score;
}
