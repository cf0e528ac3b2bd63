import { describe, expect, it } from 'vitest';

import {
  MAX_WEIGHT,
  MIN_WEIGHT,
  clampWeight,
  initialState,
  rankPayload,
  relativeWeights,
  scaleAll,
  setWeight,
} from '../src/state.js';

const IDS = ['C1', 'C2', 'C3'];

describe('clampWeight', () => {
  it('keeps valid values', () => {
    expect(clampWeight(2.5)).toEqual({ value: 2.5, clamped: false });
    expect(clampWeight(MIN_WEIGHT)).toEqual({ value: MIN_WEIGHT, clamped: false });
  });

  it('clamps below the minimum of 1', () => {
    expect(clampWeight(0.2)).toEqual({ value: MIN_WEIGHT, clamped: true });
    expect(clampWeight(-4)).toEqual({ value: MIN_WEIGHT, clamped: true });
  });

  it('clamps above the slider maximum', () => {
    expect(clampWeight(99)).toEqual({ value: MAX_WEIGHT, clamped: true });
  });

  it('maps non-finite input to the minimum', () => {
    expect(clampWeight(Number.NaN)).toEqual({ value: MIN_WEIGHT, clamped: true });
    expect(clampWeight(Infinity)).toEqual({ value: MIN_WEIGHT, clamped: true });
  });
});

describe('setWeight', () => {
  it('replaces one weight without mutating the old state', () => {
    const base = initialState(IDS, [4, 2.5, 1]);
    const { state, clamped } = setWeight(base, 1, 5);
    expect(clamped).toBe(false);
    expect(state.weights).toEqual([4, 5, 1]);
    expect(base.weights).toEqual([4, 2.5, 1]);
  });

  it('flags clamped updates', () => {
    const base = initialState(IDS, [4, 2.5, 1]);
    expect(setWeight(base, 0, 0).clamped).toBe(true);
    expect(setWeight(base, 0, 0).state.weights[0]).toBe(MIN_WEIGHT);
  });

  it('rejects out-of-range indices', () => {
    const base = initialState(IDS, [1, 1, 1]);
    expect(() => setWeight(base, 3, 2)).toThrow(/out of range/);
  });
});

describe('payload mapping', () => {
  it('rankPayload carries year and the raw relative weights', () => {
    const state = initialState(IDS, [4, 2.5, 1]);
    expect(rankPayload(state, 2011)).toEqual({ year: 2011, relative_weights: [4, 2.5, 1] });
  });

  it('relativeWeights returns a defensive copy', () => {
    const state = initialState(IDS, [4, 2.5, 1]);
    const weights = relativeWeights(state);
    weights[0] = 99;
    expect(state.weights[0]).toBe(4);
  });

  it('scaleAll doubles every entry inside the slider range', () => {
    const state = initialState(IDS, [2, 3, 4]);
    const doubled = scaleAll(state, 2);
    expect(doubled.clamped).toBe(false);
    expect(doubled.state.weights).toEqual([4, 6, 8]);
  });

  it('initialState requires matching lengths', () => {
    expect(() => initialState(IDS, [1, 2])).toThrow(/3 criteria/);
  });
});
