import type { FetchLike } from '../src/api.js';
import type { Meta } from '../src/types.js';

export interface RecordedRequest {
  path: string;
  body: unknown;
}

/** fetch stub keyed by path (query string stripped); records request bodies. */
export function stubFetch(routes: Record<string, (body: unknown, query: string) => unknown>): {
  fetchImpl: FetchLike;
  requests: RecordedRequest[];
} {
  const requests: RecordedRequest[] = [];
  const fetchImpl: FetchLike = async (input, init) => {
    const [path, query = ''] = input.split('?');
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    requests.push({ path, body });
    const route = routes[path];
    if (!route) {
      return respond(404, { detail: `no route for ${path}` });
    }
    return respond(200, route(body, query));
  };
  return { fetchImpl, requests };
}

function respond(status: number, payload: unknown): Response {
  return {
    ok: status >= 200 && status < 300,
    status,
    statusText: String(status),
    json: async () => payload,
  } as unknown as Response;
}

export const META: Meta = {
  years: [2010, 2011, 2012],
  criteria: [
    { id: 'C1', label: 'days to first in-field contract', direction: 'cost', relative_weight: 4 },
    { id: 'C2', label: 'mean in-field gap', direction: 'cost', relative_weight: 2.5 },
    { id: 'C3', label: 'in-field share', direction: 'benefit', relative_weight: 1 },
    { id: 'C4', label: 'in-field temporary share', direction: 'cost', relative_weight: 1 },
    { id: 'C5', label: 'days to first contract', direction: 'cost', relative_weight: 3 },
    { id: 'C6', label: 'mean gap', direction: 'cost', relative_weight: 2 },
    { id: 'C7', label: 'temporary share', direction: 'cost', relative_weight: 1 },
    { id: 'C8', label: 'uncovered days', direction: 'cost', relative_weight: 1 },
  ],
  programs: ['PRG01', 'PRG02', 'PRG03'],
  families: ['FAM_A', 'FAM_B'],
  program_families: { PRG01: 'FAM_A', PRG02: 'FAM_A', PRG03: 'FAM_B' },
  programs_per_year: { '2010': 3, '2011': 3, '2012': 3 },
};

export const RANK_PAYLOAD = {
  year: 2012,
  ranking: [
    { alternative: 'PRG02', score: 0.7412, rank: 1, percentile: 1.0 },
    { alternative: 'PRG01', score: 0.512, rank: 2, percentile: 0.5 },
    { alternative: 'PRG03', score: 0.1999, rank: 3, percentile: 0.0 },
  ],
  distance_to_default: 0.0,
};
