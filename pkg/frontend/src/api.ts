import type {
  GsaResponse,
  Meta,
  PanelResponse,
  RankResponse,
  ScenarioDistances,
  ScenarioSummary,
} from './types.js';

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = '',
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = (await response.json()) as { detail?: string };
        if (body.detail) detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, payload: unknown, signal?: AbortSignal): Promise<T> {
    return this.request<T>(path, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(payload),
      signal,
    });
  }

  meta(signal?: AbortSignal): Promise<Meta> {
    return this.request<Meta>('/api/meta', { signal });
  }

  rank(year: number, relativeWeights: number[], signal?: AbortSignal): Promise<RankResponse> {
    return this.post<RankResponse>('/api/rank', { year, relative_weights: relativeWeights }, signal);
  }

  scenarios(year: number, signal?: AbortSignal): Promise<ScenarioDistances> {
    return this.request<ScenarioDistances>(`/api/scenarios?year=${year}`, { signal });
  }

  scenarioSummary(signal?: AbortSignal): Promise<ScenarioSummary> {
    return this.request<ScenarioSummary>('/api/scenarios/summary', { signal });
  }

  gsa(
    relativeWeights: number[],
    options: { estimator?: 'smoother' | 'binned'; pooled?: boolean; year?: number } = {},
    signal?: AbortSignal,
  ): Promise<GsaResponse> {
    return this.post<GsaResponse>(
      '/api/gsa',
      {
        relative_weights: relativeWeights,
        estimator: options.estimator ?? 'binned',
        pooled: options.pooled ?? true,
        year: options.year ?? null,
      },
      signal,
    );
  }

  panel(relativeWeights: number[], signal?: AbortSignal): Promise<PanelResponse> {
    return this.post<PanelResponse>('/api/panel', { relative_weights: relativeWeights }, signal);
  }
}
