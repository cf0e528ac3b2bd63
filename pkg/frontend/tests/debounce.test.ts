import { afterEach, beforeEach, describe, expect, it, vi } from 'vitest';

import { LatestWins, debounce } from '../src/debounce.js';

describe('debounce', () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it('fires once after the trailing edge', () => {
    const calls: number[] = [];
    const fn = debounce(150, (x: number) => calls.push(x));
    fn(1);
    fn(2);
    fn(3);
    vi.advanceTimersByTime(149);
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(1);
    expect(calls).toEqual([3]);
  });

  it('later bursts fire separately', () => {
    const calls: number[] = [];
    const fn = debounce(150, (x: number) => calls.push(x));
    fn(1);
    vi.advanceTimersByTime(150);
    fn(2);
    vi.advanceTimersByTime(150);
    expect(calls).toEqual([1, 2]);
  });
});

describe('LatestWins', () => {
  it('delivers the only request', async () => {
    const latest = new LatestWins();
    const result = await latest.run(async () => 'value');
    expect(result).toBe('value');
  });

  it('supersedes an in-flight request', async () => {
    const latest = new LatestWins();
    let release1: (v: string) => void = () => {};
    const first = latest.run(
      (signal) =>
        new Promise<string>((resolve, reject) => {
          release1 = resolve;
          signal.addEventListener('abort', () => reject(new DOMException('aborted', 'AbortError')));
        }),
    );
    const second = latest.run(async () => 'second');
    expect(await second).toBe('second');
    release1('first');
    expect(await first).toBeNull();
  });

  it('returns null for stale responses even without abort handling', async () => {
    const latest = new LatestWins();
    let releaseFirst: (v: string) => void = () => {};
    // task ignores the abort signal entirely
    const first = latest.run(() => new Promise<string>((resolve) => (releaseFirst = resolve)));
    const second = latest.run(async () => 'fresh');
    expect(await second).toBe('fresh');
    releaseFirst('stale');
    expect(await first).toBeNull();
  });

  it('propagates real errors', async () => {
    const latest = new LatestWins();
    await expect(latest.run(async () => Promise.reject(new Error('boom')))).rejects.toThrow('boom');
  });
});
