import { ExplorerState, rulesQuery, scatterQuery } from "./state.js";
import { Meta, RulesPage, ScatterPoint } from "./types.js";

/** Typed client for the rule-serving API.
 *
 * At most one request per view is in flight; a newer query supersedes and
 * aborts the previous one.  Aborted requests reject with AbortError, which
 * callers treat as "ignore". */
export class ApiClient {
  private controllers = new Map<string, AbortController>();

  constructor(private baseUrl: string = "") {}

  private async getJson<T>(view: string, path: string): Promise<T> {
    this.controllers.get(view)?.abort();
    const controller = new AbortController();
    this.controllers.set(view, controller);
    const res = await fetch(this.baseUrl + path, { signal: controller.signal });
    if (!res.ok) {
      let detail = `${res.status}`;
      try {
        const body = (await res.json()) as { error?: string };
        if (body.error) detail = body.error;
      } catch {
        /* non-JSON error body */
      }
      throw new Error(`API request failed: ${detail}`);
    }
    return (await res.json()) as T;
  }

  fetchMeta(): Promise<Meta> {
    return this.getJson<Meta>("meta", "/api/meta");
  }

  fetchRules(state: ExplorerState): Promise<RulesPage> {
    return this.getJson<RulesPage>("rules", `/api/rules?${rulesQuery(state)}`);
  }

  fetchScatter(state: ExplorerState): Promise<ScatterPoint[]> {
    return this.getJson<ScatterPoint[]>(
      "scatter",
      `/api/scatter?${scatterQuery(state)}`,
    );
  }
}

export function isAbort(err: unknown): boolean {
  return err instanceof DOMException && err.name === "AbortError";
}
