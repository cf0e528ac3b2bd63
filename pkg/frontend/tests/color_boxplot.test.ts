import { describe, expect, it } from 'vitest';

import { boxGeometry, linearScale } from '../src/boxplot.js';
import { formatNumber, formatPercent, percentileColor } from '../src/color.js';

describe('percentileColor', () => {
  it('is green at 1 and red at 0', () => {
    expect(percentileColor(1)).toContain('hsl(120');
    expect(percentileColor(0)).toContain('hsl(0');
  });

  it('clamps out-of-range percentiles', () => {
    expect(percentileColor(1.8)).toBe(percentileColor(1));
    expect(percentileColor(-0.3)).toBe(percentileColor(0));
  });

  it('is monotone in hue', () => {
    const hue = (c: string) => Number(c.match(/hsl\((\d+)/)![1]);
    expect(hue(percentileColor(0.2))).toBeLessThan(hue(percentileColor(0.7)));
  });
});

describe('formatting', () => {
  it('fixed digits', () => {
    expect(formatNumber(0.12349, 3)).toBe('0.123');
    expect(formatPercent(0.5)).toBe('50.0%');
    expect(formatPercent(1, 0)).toBe('100%');
  });
});

describe('boxplot geometry', () => {
  it('linearScale maps domain ends to range ends', () => {
    const scale = linearScale(0, 2, 200, 0);
    expect(scale(0)).toBe(200);
    expect(scale(2)).toBe(0);
    expect(scale(1)).toBe(100);
  });

  it('degenerate domain maps to the range midpoint', () => {
    const scale = linearScale(1, 1, 200, 0);
    expect(scale(1)).toBe(100);
  });

  it('box edges are ordered for an upward scale', () => {
    const scale = linearScale(0, 1, 200, 0);
    const g = boxGeometry({ min: 0.1, q1: 0.2, median: 0.35, q3: 0.5, max: 0.9 }, scale);
    expect(g.whiskerBottom).toBeGreaterThan(g.boxBottom);
    expect(g.boxBottom).toBeGreaterThan(g.medianY);
    expect(g.medianY).toBeGreaterThan(g.boxTop);
    expect(g.boxTop).toBeGreaterThan(g.whiskerTop);
  });

  it('a point distribution collapses the box to a line', () => {
    const scale = linearScale(0, 1, 200, 0);
    const g = boxGeometry({ min: 0.4, q1: 0.4, median: 0.4, q3: 0.4, max: 0.4 }, scale);
    expect(new Set([g.boxTop, g.boxBottom, g.medianY, g.whiskerTop, g.whiskerBottom]).size).toBe(1);
  });
});
