/** Browser wiring: fetch metadata, drive the table and what-if panels. */
import { createApiClient } from "./api.js";
import { clampPage, hasNext, hasPrev, pageLabel, pageOffset } from "./pagination.js";
import { renderFeatureBarsHtml, renderSaliencyHtml } from "./saliency.js";
import { renderInstanceRowsHtml } from "./table.js";
import { scoreDelta, WhatIfController } from "./whatif.js";
const api = createApiClient("");
const $ = (id) => document.getElementById(id);
const PAGE_SIZE = 20;
let paging = { page: 0, pageSize: PAGE_SIZE, total: 0 };
let currentRows = [];
function renderPrediction(state) {
    const panel = $("prediction");
    if (state.error) {
        $("banner").textContent = `server error: ${state.error} (showing last good results)`;
        $("banner").classList.remove("hidden");
    }
    else {
        $("banner").classList.add("hidden");
    }
    if (!state.prediction) {
        panel.textContent = state.pending ? "…" : "type or pick an instance";
        return;
    }
    const p = state.prediction;
    const delta = scoreDelta(state);
    const deltaText = delta === null || Math.abs(delta) < 1e-12
        ? ""
        : ` (Δ ${delta > 0 ? "+" : ""}${delta.toFixed(3)} vs baseline)`;
    const probs = p.probs ? ` · probs [${p.probs.map((x) => x.toFixed(2)).join(", ")}]` : "";
    panel.textContent = `label ${p.label} · score ${p.score.toFixed(4)}${deltaText}${probs}`;
    panel.classList.toggle("pending", state.pending);
}
function renderAttributions(state) {
    const warn = $("attr-warning");
    if (state.attributionWarning) {
        warn.textContent = state.attributionWarning;
        warn.classList.remove("hidden");
    }
    else {
        warn.classList.add("hidden");
    }
    $("saliency").innerHTML = state.tokenAttribution
        ? renderSaliencyHtml(state.tokenAttribution.tokens, state.tokenAttribution.deltas)
        : "";
    $("features").innerHTML = state.featureAttribution
        ? renderFeatureBarsHtml(state.featureAttribution.names, state.featureAttribution.contributions)
        : "";
}
const controller = new WhatIfController(api, (state) => {
    renderPrediction(state);
    renderAttributions(state);
});
async function loadPage() {
    paging.page = clampPage(paging);
    const page = await api.instances(pageOffset(paging), paging.pageSize);
    paging.total = page.total;
    currentRows = page.items;
    $("rows").innerHTML = renderInstanceRowsHtml(page.items);
    $("page-label").textContent = pageLabel(paging);
    $("prev").disabled = !hasPrev(paging);
    $("next").disabled = !hasNext(paging);
}
function wireTable() {
    $("prev").addEventListener("click", () => {
        paging.page -= 1;
        void loadPage();
    });
    $("next").addEventListener("click", () => {
        paging.page += 1;
        void loadPage();
    });
    $("rows").addEventListener("click", (ev) => {
        const tr = ev.target.closest("tr");
        if (!tr)
            return;
        const row = currentRows.find((r) => r.id === tr.dataset.id);
        if (!row)
            return;
        $("editor").value = row.text;
        void controller.select(row.text);
    });
}
async function init() {
    let meta;
    try {
        meta = await api.metadata();
    }
    catch (err) {
        $("banner").textContent = `cannot reach the interpret server: ${String(err)}`;
        $("banner").classList.remove("hidden");
        return;
    }
    $("meta").textContent =
        `${meta.task} · labels ${meta.label_spec.lo}–${meta.label_spec.hi} · ` +
            `features: ${meta.feature_names.join(", ")}`;
    if (meta.dataset_size > 0) {
        paging = { page: 0, pageSize: PAGE_SIZE, total: meta.dataset_size };
        wireTable();
        await loadPage();
    }
    else {
        $("table-panel").classList.add("hidden");
    }
    const editor = $("editor");
    editor.addEventListener("input", () => controller.edit(editor.value));
}
void init();
