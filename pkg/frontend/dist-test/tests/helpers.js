/** Test doubles: a manual scheduler (fake clock) and a scriptable API. */
export function deferred() {
    let resolve;
    let reject;
    const promise = new Promise((res, rej) => {
        resolve = res;
        reject = rej;
    });
    return { promise, resolve, reject };
}
/** Flush resolved promise chains (one macrotask drains all microtasks). */
export function flush() {
    return new Promise((resolve) => setImmediate(resolve));
}
export class FakeScheduler {
    constructor() {
        this.now = 0;
        this.timers = new Map();
        this.nextId = 1;
    }
    setTimeout(fn, ms) {
        const id = this.nextId++;
        this.timers.set(id, { at: this.now + ms, fn });
        return id;
    }
    clearTimeout(handle) {
        this.timers.delete(handle);
    }
    advance(ms) {
        this.now += ms;
        const due = [...this.timers.entries()]
            .filter(([, t]) => t.at <= this.now)
            .sort((a, b) => a[1].at - b[1].at);
        for (const [id, timer] of due) {
            this.timers.delete(id);
            timer.fn();
        }
    }
    pendingCount() {
        return this.timers.size;
    }
}
/** API double that records calls and lets tests settle them in any order. */
export class MockApi {
    constructor() {
        this.predictCalls = [];
        this.tokenCalls = [];
        this.featureCalls = [];
    }
    metadata() {
        return Promise.resolve({
            task: "classification",
            label_spec: { lo: 0, hi: 2 },
            feature_names: ["token_count"],
            dataset_size: 60,
        });
    }
    instances() {
        return Promise.resolve({ total: 0, items: [] });
    }
    predict(text) {
        const reply = deferred();
        this.predictCalls.push({ text, reply });
        return reply.promise;
    }
    attributeTokens(text) {
        const reply = deferred();
        this.tokenCalls.push({ text, reply });
        return reply.promise;
    }
    attributeFeatures(text) {
        const reply = deferred();
        this.featureCalls.push({ text, reply });
        return reply.promise;
    }
}
export function prediction(score) {
    return { score, label: Math.round(score) };
}
export function tokenAttr(text) {
    const tokens = text.split(/\s+/).filter(Boolean);
    return { tokens, deltas: tokens.map((_, i) => i * 0.1), base_score: 1.0 };
}
export function featureAttr() {
    return { names: ["token_count"], contributions: [0.5], base_score: 1.0, bias: 0.5 };
}
