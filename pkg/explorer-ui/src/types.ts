/** Wire types of the rule-serving API. */

export interface Meta {
  ruleCount: number;
  measures: string[];
  items: string[];
}

export interface RuleRow {
  lhs: string[];
  rhs: string[];
  support: number;
  confidence: number;
  coverage: number;
  lift: number;
  count: number;
}

export interface RulesPage {
  total: number;
  rules: RuleRow[];
}

export interface ScatterPoint {
  x: number; // support
  y: number; // confidence
  shade: number; // lift
  ruleIndex: number; // position in the filtered+sorted sequence
}

export const MEASURE_COLUMNS = [
  "support",
  "confidence",
  "coverage",
  "lift",
  "count",
] as const;

export type MeasureColumn = (typeof MEASURE_COLUMNS)[number];
