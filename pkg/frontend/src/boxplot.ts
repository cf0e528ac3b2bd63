// Pure geometry for the SVG boxplots; rendering code just copies these
// coordinates into attributes.

export interface FiveNumbers {
  min: number;
  q1: number;
  median: number;
  q3: number;
  max: number;
}

export type Scale = (value: number) => number;

export function linearScale(domainMin: number, domainMax: number, rangeMin: number, rangeMax: number): Scale {
  const span = domainMax - domainMin;
  if (span === 0) return () => (rangeMin + rangeMax) / 2;
  return (value: number) => rangeMin + ((value - domainMin) / span) * (rangeMax - rangeMin);
}

export interface BoxGeometry {
  boxTop: number;
  boxBottom: number;
  medianY: number;
  whiskerTop: number;
  whiskerBottom: number;
}

/** y-coordinates for a vertical boxplot; the scale must map larger values upward (smaller y). */
export function boxGeometry(box: FiveNumbers, scale: Scale): BoxGeometry {
  return {
    boxTop: scale(box.q3),
    boxBottom: scale(box.q1),
    medianY: scale(box.median),
    whiskerTop: scale(box.max),
    whiskerBottom: scale(box.min),
  };
}
