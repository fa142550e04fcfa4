// Thin fetch wrapper; the fetch function is injected so tests can intercept
// every request/response pair.

import type {
  ApiErrorBody,
  EstimateResponse,
  RecommendRequestBody,
  RecommendResponse,
} from "./types";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly field: string | null,
    message: string,
  ) {
    super(message);
  }
}

export class NetworkError extends Error {}

async function errorFrom(resp: Response): Promise<ApiError> {
  try {
    const body = (await resp.json()) as ApiErrorBody;
    return new ApiError(body.error.field, body.error.message);
  } catch {
    return new ApiError(null, `unexpected response (${resp.status})`);
  }
}

export class ApiClient {
  constructor(
    private readonly fetchFn: FetchLike,
    private readonly baseUrl: string = "",
  ) {}

  async recommend(
    body: RecommendRequestBody,
    signal?: AbortSignal,
  ): Promise<RecommendResponse> {
    let resp: Response;
    try {
      resp = await this.fetchFn(`${this.baseUrl}/api/recommend`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
        signal,
      });
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") throw err;
      throw new NetworkError(String(err));
    }
    if (!resp.ok) throw await errorFrom(resp);
    return (await resp.json()) as RecommendResponse;
  }

  async estimate(image: ArrayBuffer | Uint8Array, ppcm: number): Promise<EstimateResponse> {
    let resp: Response;
    try {
      resp = await this.fetchFn(
        `${this.baseUrl}/api/measurements/estimate?ppcm=${encodeURIComponent(ppcm)}`,
        { method: "POST", body: image as BodyInit },
      );
    } catch (err) {
      throw new NetworkError(String(err));
    }
    if (!resp.ok) throw await errorFrom(resp);
    return (await resp.json()) as EstimateResponse;
  }
}
