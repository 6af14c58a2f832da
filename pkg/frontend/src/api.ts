/** Thin typed client for the interpret server. */

import type {
  FeatureAttribution,
  InstancePage,
  Metadata,
  Prediction,
  TokenAttribution,
} from "./types.js";

/** Error carrying the server's {error, message} body and HTTP status. */
export class ApiRequestError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

export interface ApiClient {
  metadata(): Promise<Metadata>;
  instances(offset: number, limit: number): Promise<InstancePage>;
  predict(text: string): Promise<Prediction>;
  attributeTokens(text: string): Promise<TokenAttribution>;
  attributeFeatures(text: string): Promise<FeatureAttribution>;
}

async function parseResponse<T>(resp: Response): Promise<T> {
  const body = await resp.json().catch(() => null);
  if (!resp.ok) {
    const code = body && typeof body.error === "string" ? body.error : "HttpError";
    const message = body && typeof body.message === "string" ? body.message : resp.statusText;
    throw new ApiRequestError(resp.status, code, message);
  }
  return body as T;
}

export function createApiClient(baseUrl = ""): ApiClient {
  const get = async <T>(path: string): Promise<T> =>
    parseResponse<T>(await fetch(baseUrl + path));
  const post = async <T>(path: string, payload: unknown): Promise<T> =>
    parseResponse<T>(
      await fetch(baseUrl + path, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(payload),
      }),
    );

  return {
    metadata: () => get("/api/metadata"),
    instances: (offset, limit) => get(`/api/instances?offset=${offset}&limit=${limit}`),
    predict: (text) => post("/api/predict", { text }),
    attributeTokens: (text) => post("/api/attribute/tokens", { text }),
    attributeFeatures: (text) => post("/api/attribute/features", { text }),
  };
}
