// Slider state and its mapping to request payloads. Pure functions only:
// the views call these and render whatever the service replies.

export const MIN_WEIGHT = 1;
export const MAX_WEIGHT = 10;

export interface WeightState {
  readonly ids: readonly string[];
  readonly weights: readonly number[];
}

export interface WeightUpdate {
  state: WeightState;
  clamped: boolean;
}

export function initialState(ids: readonly string[], defaults: readonly number[]): WeightState {
  if (ids.length !== defaults.length) {
    throw new Error(`got ${ids.length} criteria but ${defaults.length} default weights`);
  }
  return { ids: [...ids], weights: defaults.map((w) => clampWeight(w).value) };
}

export function clampWeight(raw: number): { value: number; clamped: boolean } {
  if (!Number.isFinite(raw)) return { value: MIN_WEIGHT, clamped: true };
  if (raw < MIN_WEIGHT) return { value: MIN_WEIGHT, clamped: true };
  if (raw > MAX_WEIGHT) return { value: MAX_WEIGHT, clamped: true };
  return { value: raw, clamped: false };
}

export function setWeight(state: WeightState, index: number, raw: number): WeightUpdate {
  if (index < 0 || index >= state.weights.length) {
    throw new Error(`weight index ${index} out of range`);
  }
  const { value, clamped } = clampWeight(raw);
  const weights = [...state.weights];
  weights[index] = value;
  return { state: { ids: state.ids, weights }, clamped };
}

export function scaleAll(state: WeightState, factor: number): WeightUpdate {
  let clampedAny = false;
  const weights = state.weights.map((w) => {
    const { value, clamped } = clampWeight(w * factor);
    clampedAny ||= clamped;
    return value;
  });
  return { state: { ids: state.ids, weights }, clamped: clampedAny };
}

export function relativeWeights(state: WeightState): number[] {
  return [...state.weights];
}

export function rankPayload(state: WeightState, year: number): { year: number; relative_weights: number[] } {
  return { year, relative_weights: relativeWeights(state) };
}
