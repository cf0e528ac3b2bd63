// Percentile color scale: the greener the better, red at the bottom.

export function percentileColor(percentile: number): string {
  const p = Math.max(0, Math.min(1, percentile));
  const hue = Math.round(120 * p); // 0 = red, 120 = green
  const lightness = 62 - Math.round(14 * p);
  return `hsl(${hue}, 70%, ${lightness}%)`;
}

export function formatNumber(value: number, digits = 3): string {
  return value.toFixed(digits);
}

export function formatPercent(value: number, digits = 1): string {
  return `${(100 * value).toFixed(digits)}%`;
}
