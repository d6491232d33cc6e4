/**
 * Typed client for the FPR service JSON API.
 *
 * Every number shown in the UI comes from these endpoints; the client
 * does no arithmetic beyond input validation.
 */

export type Mode = "fpr_from_p_prior" | "p_from_fpr_prior" | "prior_from_p_fpr";
export type Method = "p_equals" | "p_less_than" | "sellke_berger" | "goodman";

export interface CalcRequest {
  mode: Mode;
  n_per_group: number;
  effect_size_normalized: number;
  p_value?: number;
  prior?: number;
  fpr?: number;
  method?: Method;
}

export interface CalcResponse {
  schema_version: string;
  request: {
    mode: Mode;
    method: Method;
    n_per_group: number;
    effect_size_normalized: number;
    p_value?: number;
    prior?: number;
    fpr?: number;
  };
  p_value: number;
  prior: number;
  fpr: number;
  l10: number;
  l01: number;
  power_at_005: number;
  statement: string;
  notes: string[];
}

export interface CurveSeriesPayload {
  name: string;
  x_label: string;
  points: [number, number][];
  params: Record<string, number>;
}

export interface CurvesResponse {
  schema_version: string;
  figure: string;
  series: CurveSeriesPayload[];
  minimum?: { n: number; fpr: number };
}

export interface ServiceError {
  code: string;
  message: string;
}

export class ApiError extends Error {
  readonly code: string;

  constructor(err: ServiceError) {
    super(err.message);
    this.code = err.code;
  }
}

async function readError(response: Response): Promise<never> {
  let payload: { error?: ServiceError } | undefined;
  try {
    payload = await response.json();
  } catch {
    /* non-JSON error body */
  }
  throw new ApiError(
    payload?.error ?? { code: `http_${response.status}`, message: response.statusText },
  );
}

export class ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  private async get<T>(path: string, params?: Record<string, number | string>): Promise<T> {
    const url = new URL(this.baseUrl + path, this.baseUrl ? undefined : window.location.origin);
    for (const [k, v] of Object.entries(params ?? {})) {
      url.searchParams.set(k, String(v));
    }
    const response = await fetch(url);
    if (!response.ok) await readError(response);
    return (await response.json()) as T;
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) await readError(response);
    return (await response.json()) as T;
  }

  calc(request: CalcRequest): Promise<CalcResponse> {
    return this.post<CalcResponse>("/api/v1/calc", request);
  }

  curves(
    figure: "fig1" | "fig2" | "fig3",
    params?: Record<string, number>,
  ): Promise<CurvesResponse> {
    return this.get<CurvesResponse>(`/api/v1/curves/${figure}`, params);
  }

  health(): Promise<{ status: string; version: string }> {
    return this.get("/api/v1/health");
  }
}
