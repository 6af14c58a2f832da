import assert from "node:assert/strict";
import { test } from "node:test";
import { escapeHtml, renderFeatureBarsHtml, renderSaliencyHtml, tintColor, tintTokens, } from "../src/saliency.js";
test("all-zero deltas render neutral with no division by zero", () => {
    const tints = tintTokens(["a", "b", "c"], [0, 0, 0]);
    for (const t of tints) {
        assert.equal(t.intensity, 0);
        assert.equal(t.sign, "zero");
        assert.equal(tintColor(t), "transparent");
    }
    const html = renderSaliencyHtml(["a", "b", "c"], [0, 0, 0]);
    assert.match(html, /background:transparent/);
    assert.doesNotMatch(html, /NaN/);
});
test("dominant delta gets full intensity", () => {
    const tints = tintTokens(["big", "small"], [2.0, 0.5]);
    assert.equal(tints[0].intensity, 1);
    assert.equal(tints[1].intensity, 0.25);
});
test("negative deltas take the opposite hue", () => {
    const [pos, neg] = tintTokens(["up", "down"], [1.0, -1.0]);
    assert.equal(pos.sign, "pos");
    assert.equal(neg.sign, "neg");
    assert.match(tintColor(pos), /^rgba\(214/);
    assert.match(tintColor(neg), /^rgba\(64/);
});
test("misaligned inputs are rejected", () => {
    assert.throws(() => tintTokens(["a"], [1, 2]));
});
test("token text is escaped and delta shown on hover", () => {
    const html = renderSaliencyHtml(["<b>"], [0.5]);
    assert.match(html, /&lt;b&gt;/);
    assert.match(html, /title="0\.500000"/);
});
test("escapeHtml covers the dangerous characters", () => {
    assert.equal(escapeHtml(`<a href="x">&`), "&lt;a href=&quot;x&quot;&gt;&amp;");
});
test("feature bars scale to the largest contribution", () => {
    const html = renderFeatureBarsHtml(["f1", "f2"], [1.0, -0.5]);
    assert.match(html, /width:100px/);
    assert.match(html, /width:50px/);
    assert.match(html, /bar pos/);
    assert.match(html, /bar neg/);
});
test("all-zero feature bars render at zero width", () => {
    const html = renderFeatureBarsHtml(["f1"], [0]);
    assert.match(html, /width:0px/);
});
