import type { Annotation, Progress, ReviewRequest, Status } from "./types.js";

export class ApiError extends Error {
  constructor(public readonly status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = typeof fetch;

/** Thin typed client for the review endpoints. */
export class ReviewApi {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let resp: Response;
    try {
      resp = await this.fetchImpl(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError(0, `cannot reach server: ${String(err)}`);
    }
    const body = await resp.json().catch(() => ({}));
    if (!resp.ok) {
      const detail =
        typeof body === "object" && body !== null && "error" in body
          ? String((body as { error: unknown }).error)
          : resp.statusText;
      throw new ApiError(resp.status, detail);
    }
    return body as T;
  }

  queue(status?: Status, limit?: number): Promise<Annotation[]> {
    const params = new URLSearchParams();
    if (status) params.set("status", status);
    if (limit !== undefined) params.set("limit", String(limit));
    const qs = params.toString();
    return this.request(`/api/queue${qs ? "?" + qs : ""}`);
  }

  progress(): Promise<Progress> {
    return this.request("/api/progress");
  }

  getContext(contextId: string): Promise<Annotation> {
    return this.request(`/api/contexts/${encodeURIComponent(contextId)}`);
  }

  decide(contextId: string, body: ReviewRequest): Promise<Annotation> {
    return this.request(
      `/api/contexts/${encodeURIComponent(contextId)}/annotation`,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(body),
      },
    );
  }
}
