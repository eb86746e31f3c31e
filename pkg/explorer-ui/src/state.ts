/** Explorer view state, fully serializable into the URL query string so a
 * reload (or a shared link) restores the identical view. */

export interface ExplorerState {
  minSupport: number | null;
  minConfidence: number | null;
  minLift: number | null;
  lhsContains: string;
  rhsContains: string;
  sort: string;
  desc: boolean;
  offset: number;
  limit: number;
  selected: number | null; // ruleIndex within the filtered+sorted sequence
}

export const DEFAULT_STATE: ExplorerState = {
  minSupport: null,
  minConfidence: null,
  minLift: null,
  lhsContains: "",
  rhsContains: "",
  sort: "confidence",
  desc: true,
  offset: 0,
  limit: 25,
  selected: null,
};

/** Only non-default fields are written, keeping URLs short. */
export function encodeState(state: ExplorerState): string {
  const q = new URLSearchParams();
  if (state.minSupport !== null) q.set("minSupport", String(state.minSupport));
  if (state.minConfidence !== null)
    q.set("minConfidence", String(state.minConfidence));
  if (state.minLift !== null) q.set("minLift", String(state.minLift));
  if (state.lhsContains) q.set("lhsContains", state.lhsContains);
  if (state.rhsContains) q.set("rhsContains", state.rhsContains);
  if (state.sort !== DEFAULT_STATE.sort) q.set("sort", state.sort);
  if (!state.desc) q.set("desc", "false");
  if (state.offset !== DEFAULT_STATE.offset) q.set("offset", String(state.offset));
  if (state.limit !== DEFAULT_STATE.limit) q.set("limit", String(state.limit));
  if (state.selected !== null) q.set("selected", String(state.selected));
  return q.toString();
}

function numOrNull(q: URLSearchParams, key: string): number | null {
  const raw = q.get(key);
  if (raw === null || raw === "") return null;
  const v = Number(raw);
  return Number.isFinite(v) ? v : null;
}

export function decodeState(query: string): ExplorerState {
  const q = new URLSearchParams(query);
  const nonNegInt = (key: string, fallback: number): number => {
    const v = numOrNull(q, key);
    return v === null || v < 0 || !Number.isInteger(v) ? fallback : v;
  };
  return {
    minSupport: numOrNull(q, "minSupport"),
    minConfidence: numOrNull(q, "minConfidence"),
    minLift: numOrNull(q, "minLift"),
    lhsContains: q.get("lhsContains") ?? "",
    rhsContains: q.get("rhsContains") ?? "",
    sort: q.get("sort") ?? DEFAULT_STATE.sort,
    desc: q.get("desc") !== "false",
    offset: nonNegInt("offset", DEFAULT_STATE.offset),
    limit: nonNegInt("limit", DEFAULT_STATE.limit),
    selected: numOrNull(q, "selected"),
  };
}

/** Query parameters for /api/rules. */
export function rulesQuery(state: ExplorerState): URLSearchParams {
  const q = filterQuery(state);
  q.set("sort", state.sort);
  q.set("desc", String(state.desc));
  q.set("offset", String(state.offset));
  q.set("limit", String(state.limit));
  return q;
}

/** Query parameters for /api/scatter: filters and ordering, no paging. */
export function scatterQuery(state: ExplorerState): URLSearchParams {
  const q = filterQuery(state);
  q.set("sort", state.sort);
  q.set("desc", String(state.desc));
  return q;
}

function filterQuery(state: ExplorerState): URLSearchParams {
  const q = new URLSearchParams();
  if (state.minSupport !== null) q.set("minSupport", String(state.minSupport));
  if (state.minConfidence !== null)
    q.set("minConfidence", String(state.minConfidence));
  if (state.minLift !== null) q.set("minLift", String(state.minLift));
  if (state.lhsContains) q.set("lhsContains", state.lhsContains);
  if (state.rhsContains) q.set("rhsContains", state.rhsContains);
  return q;
}
