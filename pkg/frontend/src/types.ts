// Payload shapes of the ranking service JSON API. The UI renders these
// verbatim: every displayed number originates from one of these responses.

export interface CriterionMeta {
  id: string;
  label: string;
  direction: 'benefit' | 'cost';
  relative_weight: number;
}

export interface Meta {
  years: number[];
  criteria: CriterionMeta[];
  programs: string[];
  families: string[];
  program_families: Record<string, string>;
  programs_per_year: Record<string, number>;
}

export interface RankRow {
  alternative: string;
  score: number;
  rank: number;
  percentile: number;
}

export interface RankResponse {
  year: number;
  ranking: RankRow[];
  distance_to_default: number;
}

export interface ScenarioPoint {
  year: number;
  distance: number;
}

export interface ScenarioBox {
  criterion: string;
  min: number;
  q1: number;
  median: number;
  q3: number;
  max: number;
  points: ScenarioPoint[];
}

export interface ScenarioSummary {
  criteria: ScenarioBox[];
}

export interface ScenarioDistances {
  year: number;
  distances: { criterion: string; distance: number }[];
}

export interface EffectRow {
  criterion: string;
  eta_sq: number;
  raw_eta_sq: number;
  residual_var: number;
}

export interface GsaScheme {
  scheme: string;
  estimator: string;
  sample_size: number;
  effects: EffectRow[];
}

export interface GsaResponse {
  pooled: boolean;
  schemes: GsaScheme[];
}

export interface PanelProgram {
  id: string;
  family: string | null;
  mean_percentile: number;
  percentiles: Record<string, number>;
}

export interface FamilyBand {
  family: string;
  year: number;
  mean: number;
  min: number;
  max: number;
  count: number;
}

export interface PanelResponse {
  years: number[];
  programs: PanelProgram[];
  families: FamilyBand[];
}
