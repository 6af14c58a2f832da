/** Test doubles: a manual scheduler (fake clock) and a scriptable API. */

import type { ApiClient } from "../src/api.js";
import type {
  FeatureAttribution,
  InstancePage,
  Metadata,
  Prediction,
  TokenAttribution,
} from "../src/types.js";
import type { Scheduler } from "../src/whatif.js";

export interface Deferred<T> {
  promise: Promise<T>;
  resolve: (value: T) => void;
  reject: (err: unknown) => void;
}

export function deferred<T>(): Deferred<T> {
  let resolve!: (value: T) => void;
  let reject!: (err: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}

/** Flush resolved promise chains (one macrotask drains all microtasks). */
export function flush(): Promise<void> {
  return new Promise((resolve) => setImmediate(resolve));
}

interface Timer {
  at: number;
  fn: () => void;
}

export class FakeScheduler implements Scheduler {
  now = 0;
  private timers = new Map<number, Timer>();
  private nextId = 1;

  setTimeout(fn: () => void, ms: number): unknown {
    const id = this.nextId++;
    this.timers.set(id, { at: this.now + ms, fn });
    return id;
  }

  clearTimeout(handle: unknown): void {
    this.timers.delete(handle as number);
  }

  advance(ms: number): void {
    this.now += ms;
    const due = [...this.timers.entries()]
      .filter(([, t]) => t.at <= this.now)
      .sort((a, b) => a[1].at - b[1].at);
    for (const [id, timer] of due) {
      this.timers.delete(id);
      timer.fn();
    }
  }

  pendingCount(): number {
    return this.timers.size;
  }
}

export interface Call<T> {
  text: string;
  reply: Deferred<T>;
}

/** API double that records calls and lets tests settle them in any order. */
export class MockApi implements ApiClient {
  predictCalls: Call<Prediction>[] = [];
  tokenCalls: Call<TokenAttribution>[] = [];
  featureCalls: Call<FeatureAttribution>[] = [];

  metadata(): Promise<Metadata> {
    return Promise.resolve({
      task: "classification",
      label_spec: { lo: 0, hi: 2 },
      feature_names: ["token_count"],
      dataset_size: 60,
    });
  }

  instances(): Promise<InstancePage> {
    return Promise.resolve({ total: 0, items: [] });
  }

  predict(text: string): Promise<Prediction> {
    const reply = deferred<Prediction>();
    this.predictCalls.push({ text, reply });
    return reply.promise;
  }

  attributeTokens(text: string): Promise<TokenAttribution> {
    const reply = deferred<TokenAttribution>();
    this.tokenCalls.push({ text, reply });
    return reply.promise;
  }

  attributeFeatures(text: string): Promise<FeatureAttribution> {
    const reply = deferred<FeatureAttribution>();
    this.featureCalls.push({ text, reply });
    return reply.promise;
  }
}

export function prediction(score: number): Prediction {
  return { score, label: Math.round(score) };
}

export function tokenAttr(text: string): TokenAttribution {
  const tokens = text.split(/\s+/).filter(Boolean);
  return { tokens, deltas: tokens.map((_, i) => i * 0.1), base_score: 1.0 };
}

export function featureAttr(): FeatureAttribution {
  return { names: ["token_count"], contributions: [0.5], base_score: 1.0, bias: 0.5 };
}
