import { afterEach, beforeEach, describe, expect, it, vi } from 'vitest';

import { ApiClient } from '../src/api.js';
import { WeightWorkbench } from '../src/workbench.js';
import { META, RANK_PAYLOAD, stubFetch } from './helpers.js';

function mount() {
  document.body.innerHTML = '';
  const host = document.createElement('div');
  document.body.appendChild(host);
  return host;
}

describe('WeightWorkbench rendering', () => {
  it('displays exactly the numbers from the rank payload', async () => {
    const { fetchImpl } = stubFetch({ '/api/rank': () => RANK_PAYLOAD });
    const bench = new WeightWorkbench(mount(), new ApiClient('', fetchImpl), META, { debounceMs: 0 });
    await bench.commit();
    const rows = bench.displayedOrder();
    expect(rows).toEqual(['PRG02', 'PRG01', 'PRG03']);
    const cells = Array.from(document.querySelectorAll('[data-testid="ranking-body"] tr')).map((tr) =>
      Array.from(tr.children).map((td) => td.textContent),
    );
    // scores and percentiles are string-formatted payload values, nothing recomputed
    expect(cells[0]).toEqual(['1', 'PRG02', '0.7412', '100.0%']);
    expect(cells[1]).toEqual(['2', 'PRG01', '0.5120', '50.0%']);
    expect(cells[2]).toEqual(['3', 'PRG03', '0.1999', '0.0%']);
    expect(bench.displayedDivergence()).toBe('divergence 0.000');
  });

  it('shows the payload divergence when nonzero', async () => {
    const { fetchImpl } = stubFetch({
      '/api/rank': () => ({ ...RANK_PAYLOAD, distance_to_default: 0.4444 }),
    });
    const bench = new WeightWorkbench(mount(), new ApiClient('', fetchImpl), META, { debounceMs: 0 });
    await bench.commit();
    expect(bench.displayedDivergence()).toBe('divergence 0.444');
  });

  it('initializes sliders at the default relative weights from meta', () => {
    const { fetchImpl } = stubFetch({ '/api/rank': () => RANK_PAYLOAD });
    new WeightWorkbench(mount(), new ApiClient('', fetchImpl), META, { debounceMs: 0 });
    const slider = document.querySelector('[data-testid="slider-C1"]') as HTMLInputElement;
    expect(slider.value).toBe('4');
    expect(slider.min).toBe('1');
  });

  it('shows the connection banner when the service is unreachable', async () => {
    const failing = () => Promise.reject(new TypeError('network down'));
    const bench = new WeightWorkbench(mount(), new ApiClient('', failing), META, { debounceMs: 0 });
    await bench.commit();
    const banner = document.querySelector('[data-testid="connection-banner"]')!;
    expect(banner.classList.contains('hidden')).toBe(false);
  });
});

describe('WeightWorkbench slider handling', () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it('sends the moved weights in the request body', async () => {
    const { fetchImpl, requests } = stubFetch({ '/api/rank': () => RANK_PAYLOAD });
    const bench = new WeightWorkbench(mount(), new ApiClient('', fetchImpl), META, { debounceMs: 150 });
    bench.setSlider('C4', 7.5);
    await vi.advanceTimersByTimeAsync(150);
    const rankRequests = requests.filter((r) => r.path === '/api/rank');
    expect(rankRequests).toHaveLength(1);
    expect((rankRequests[0].body as { relative_weights: number[] }).relative_weights).toEqual([
      4, 2.5, 1, 7.5, 3, 2, 1, 1,
    ]);
  });

  it('debounces bursts of slider moves into one request', async () => {
    const { fetchImpl, requests } = stubFetch({ '/api/rank': () => RANK_PAYLOAD });
    const bench = new WeightWorkbench(mount(), new ApiClient('', fetchImpl), META, { debounceMs: 150 });
    bench.setSlider('C1', 5);
    await vi.advanceTimersByTimeAsync(50);
    bench.setSlider('C1', 6);
    await vi.advanceTimersByTimeAsync(50);
    bench.setSlider('C1', 7);
    await vi.advanceTimersByTimeAsync(150);
    expect(requests.filter((r) => r.path === '/api/rank')).toHaveLength(1);
  });

  it('clamps invalid input to the minimum with a visual cue', async () => {
    const { fetchImpl, requests } = stubFetch({ '/api/rank': () => RANK_PAYLOAD });
    const bench = new WeightWorkbench(mount(), new ApiClient('', fetchImpl), META, { debounceMs: 0 });
    bench.setSlider('C2', -3);
    const label = document.querySelector('[data-testid="weight-C2"]')!;
    expect(label.textContent).toBe('1.0');
    expect(label.classList.contains('clamped')).toBe(true);
    await vi.advanceTimersByTimeAsync(1);
    const sent = requests.filter((r) => r.path === '/api/rank').at(-1)!.body as {
      relative_weights: number[];
    };
    expect(sent.relative_weights[1]).toBe(1);
  });

  it('notifies listeners with the committed weights', async () => {
    const { fetchImpl } = stubFetch({ '/api/rank': () => RANK_PAYLOAD });
    const seen: number[][] = [];
    const bench = new WeightWorkbench(mount(), new ApiClient('', fetchImpl), META, {
      debounceMs: 0,
      onWeightsCommitted: (w) => seen.push(w),
    });
    await bench.commit();
    expect(seen).toEqual([[4, 2.5, 1, 1, 3, 2, 1, 1]]);
  });
});
