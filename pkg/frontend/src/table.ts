/** Instance-table rendering: prediction-vs-gold rows with mismatch flags. */

import { escapeHtml } from "./saliency.js";
import type { InstanceRow } from "./types.js";

const PREVIEW_CHARS = 90;

export function renderInstanceRowsHtml(items: InstanceRow[]): string {
  return items
    .map((row) => {
      const mismatch = row.gold_label !== null && row.gold_label !== row.pred_label;
      const cls = mismatch ? ' class="mismatch"' : "";
      const preview =
        row.text.length > PREVIEW_CHARS ? row.text.slice(0, PREVIEW_CHARS) + "…" : row.text;
      const gold = row.gold_label === null ? "–" : String(row.gold_label);
      return (
        `<tr${cls} data-id="${escapeHtml(row.id)}">` +
        `<td>${escapeHtml(row.id)}</td>` +
        `<td>${gold}</td>` +
        `<td>${row.pred_label}</td>` +
        `<td>${row.pred_score.toFixed(3)}</td>` +
        `<td class="preview">${escapeHtml(preview)}</td></tr>`
      );
    })
    .join("");
}
