/**
 * Token saliency rendering: tokens tinted by signed delta on a diverging
 * scale, normalized by the largest |delta|. All-zero deltas render neutral
 * (the normalizer guards the division).
 */
export function tintTokens(tokens, deltas) {
    if (tokens.length !== deltas.length) {
        throw new Error(`tokens (${tokens.length}) and deltas (${deltas.length}) misaligned`);
    }
    const maxAbs = deltas.reduce((m, d) => Math.max(m, Math.abs(d)), 0);
    return tokens.map((token, i) => {
        const delta = deltas[i];
        const intensity = maxAbs === 0 ? 0 : Math.abs(delta) / maxAbs;
        const sign = delta > 0 ? "pos" : delta < 0 ? "neg" : "zero";
        return { token, delta, intensity, sign };
    });
}
/** CSS background for one tint: warm for positive, cool for negative. */
export function tintColor(tint) {
    if (tint.sign === "zero" || tint.intensity === 0)
        return "transparent";
    const alpha = (0.15 + 0.75 * tint.intensity).toFixed(3);
    return tint.sign === "pos" ? `rgba(214,86,60,${alpha})` : `rgba(64,110,196,${alpha})`;
}
export function escapeHtml(text) {
    return text
        .replace(/&/g, "&amp;")
        .replace(/</g, "&lt;")
        .replace(/>/g, "&gt;")
        .replace(/"/g, "&quot;");
}
/** HTML for the saliency heatmap; hover shows the numeric delta. */
export function renderSaliencyHtml(tokens, deltas) {
    return tintTokens(tokens, deltas)
        .map((t) => `<span class="tok" style="background:${tintColor(t)}" ` +
        `title="${t.delta.toFixed(6)}">${escapeHtml(t.token)}</span>`)
        .join(" ");
}
/** HTML for the signed feature-contribution bars. */
export function renderFeatureBarsHtml(names, contributions) {
    const maxAbs = contributions.reduce((m, c) => Math.max(m, Math.abs(c)), 0);
    const rows = names.map((name, i) => {
        const c = contributions[i];
        const width = maxAbs === 0 ? 0 : Math.round((Math.abs(c) / maxAbs) * 100);
        const cls = c >= 0 ? "bar pos" : "bar neg";
        return (`<div class="feature-row"><span class="feature-name">${escapeHtml(name)}</span>` +
            `<span class="${cls}" style="width:${width}px"></span>` +
            `<span class="feature-value">${c.toFixed(4)}</span></div>`);
    });
    return rows.join("");
}
