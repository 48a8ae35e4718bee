import type { AnalyzeRequest, AnalyzeResponse, ProfilePayload } from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
  }
}

/** Same-origin by default; override via window.BRANDGAUGE_API or tests. */
export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface ApiClient {
  analyze(req: AnalyzeRequest): Promise<AnalyzeResponse>;
  getProfile(company: string): Promise<ProfilePayload>;
}

async function readError(res: Response): Promise<string> {
  try {
    const body = await res.json();
    if (typeof body.detail === "string") return body.detail;
    if (Array.isArray(body.detail)) {
      return body.detail
        .map((d: { loc?: string[]; msg?: string }) =>
          d.loc ? `${d.loc.join(".")}: ${d.msg}` : String(d.msg),
        )
        .join("; ");
    }
  } catch {
    /* non-JSON error body */
  }
  return `request failed (${res.status})`;
}

export function createApiClient(baseUrl = "", fetchFn?: FetchLike): ApiClient {
  const doFetch: FetchLike = fetchFn ?? ((url, init) => fetch(url, init));

  async function post<T>(path: string, body: unknown): Promise<T> {
    const res = await doFetch(baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!res.ok) throw new ApiError(res.status, await readError(res));
    return res.json() as Promise<T>;
  }

  return {
    analyze: (req) => post<AnalyzeResponse>("/v1/analyze", req),
    getProfile: async (company) => {
      const res = await doFetch(`${baseUrl}/v1/profiles/${encodeURIComponent(company)}`);
      if (!res.ok) throw new ApiError(res.status, await readError(res));
      return res.json() as Promise<ProfilePayload>;
    },
  };
}
