/** Pure pagination arithmetic for the instance table. */
export function pageCount(state) {
    if (state.total <= 0)
        return 0;
    return Math.ceil(state.total / state.pageSize);
}
export function clampPage(state) {
    const last = Math.max(0, pageCount(state) - 1);
    return Math.min(Math.max(0, state.page), last);
}
export function pageOffset(state) {
    return clampPage(state) * state.pageSize;
}
/** Label like "21-40 of 60"; empty-dataset label is stable too. */
export function pageLabel(state) {
    if (state.total <= 0)
        return "0 of 0";
    const start = pageOffset(state) + 1;
    const end = Math.min(state.total, start + state.pageSize - 1);
    return `${start}-${end} of ${state.total}`;
}
export function hasPrev(state) {
    return clampPage(state) > 0;
}
export function hasNext(state) {
    return clampPage(state) < pageCount(state) - 1;
}
