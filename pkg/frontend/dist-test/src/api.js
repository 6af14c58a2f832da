/** Thin typed client for the interpret server. */
/** Error carrying the server's {error, message} body and HTTP status. */
export class ApiRequestError extends Error {
    constructor(status, code, message) {
        super(message);
        this.status = status;
        this.code = code;
    }
}
async function parseResponse(resp) {
    const body = await resp.json().catch(() => null);
    if (!resp.ok) {
        const code = body && typeof body.error === "string" ? body.error : "HttpError";
        const message = body && typeof body.message === "string" ? body.message : resp.statusText;
        throw new ApiRequestError(resp.status, code, message);
    }
    return body;
}
export function createApiClient(baseUrl = "") {
    const get = async (path) => parseResponse(await fetch(baseUrl + path));
    const post = async (path, payload) => parseResponse(await fetch(baseUrl + path, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(payload),
    }));
    return {
        metadata: () => get("/api/metadata"),
        instances: (offset, limit) => get(`/api/instances?offset=${offset}&limit=${limit}`),
        predict: (text) => post("/api/predict", { text }),
        attributeTokens: (text) => post("/api/attribute/tokens", { text }),
        attributeFeatures: (text) => post("/api/attribute/features", { text }),
    };
}
