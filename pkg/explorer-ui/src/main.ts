import { ApiClient, isAbort } from "./api.js";
import {
  DEFAULT_STATE,
  decodeState,
  encodeState,
  ExplorerState,
} from "./state.js";
import {
  pageCount,
  renderHeaderHtml,
  renderPagerText,
  renderRowsHtml,
} from "./table.js";
import { renderScatterSvg } from "./scatter.js";
import { RulesPage, ScatterPoint } from "./types.js";

const DEBOUNCE_MS = 250;

class Explorer {
  private state: ExplorerState;
  private api = new ApiClient();
  private page: RulesPage = { total: 0, rules: [] };
  private points: ScatterPoint[] = [];
  private debounce: number | undefined;

  private el = {
    banner: document.getElementById("error-banner")!,
    meta: document.getElementById("meta-line")!,
    head: document.querySelector("#rule-table thead")!,
    body: document.querySelector("#rule-table tbody")!,
    pager: document.getElementById("pager-text")!,
    prev: document.getElementById("prev-page") as HTMLButtonElement,
    next: document.getElementById("next-page") as HTMLButtonElement,
    scatter: document.getElementById("scatter-holder")!,
    inputs: {
      minSupport: document.getElementById("f-support") as HTMLInputElement,
      minConfidence: document.getElementById("f-confidence") as HTMLInputElement,
      minLift: document.getElementById("f-lift") as HTMLInputElement,
      lhsContains: document.getElementById("f-lhs") as HTMLInputElement,
      rhsContains: document.getElementById("f-rhs") as HTMLInputElement,
      limit: document.getElementById("f-limit") as HTMLSelectElement,
    },
  };

  constructor() {
    this.state = decodeState(window.location.search.replace(/^\?/, ""));
    this.bindEvents();
    this.syncInputs();
  }

  async start(): Promise<void> {
    try {
      const meta = await this.api.fetchMeta();
      this.el.meta.textContent =
        `${meta.ruleCount} rules, ${meta.items.length} items, ` +
        `measures: ${meta.measures.join(", ")}`;
    } catch (err) {
      this.showError(err);
    }
    await this.refresh();
  }

  /** Push the current state into the URL and re-query both views. */
  private async refresh(push = false): Promise<void> {
    const query = encodeState(this.state);
    const url = query ? `?${query}` : window.location.pathname;
    if (push) history.pushState(null, "", url);
    else history.replaceState(null, "", url);

    try {
      const [page, points] = await Promise.all([
        this.api.fetchRules(this.state),
        this.api.fetchScatter(this.state),
      ]);
      this.page = page;
      this.points = points;
      this.hideError();
      this.renderAll();
    } catch (err) {
      if (!isAbort(err)) this.showError(err); // state is preserved on failure
    }
  }

  private renderAll(): void {
    this.el.head.innerHTML = renderHeaderHtml(this.state);
    this.el.body.innerHTML = renderRowsHtml(this.page, this.state);
    this.el.pager.textContent = renderPagerText(this.page, this.state);
    const lastPage = (pageCount(this.page.total, this.state.limit) - 1) *
      this.state.limit;
    this.el.prev.disabled = this.state.offset <= 0;
    this.el.next.disabled = this.state.offset >= lastPage;
    this.el.scatter.innerHTML = renderScatterSvg(this.points, this.state.selected);
  }

  private bindEvents(): void {
    for (const [key, input] of Object.entries(this.el.inputs)) {
      input.addEventListener("input", () => {
        window.clearTimeout(this.debounce);
        this.debounce = window.setTimeout(() => {
          this.readInputs();
          this.state.offset = 0;
          this.state.selected = null;
          void this.refresh(true);
        }, DEBOUNCE_MS);
      });
      void key;
    }

    this.el.head.addEventListener("click", (ev) => {
      const th = (ev.target as HTMLElement).closest("th[data-sort]");
      if (!th) return;
      const column = th.getAttribute("data-sort")!;
      if (this.state.sort === column) this.state.desc = !this.state.desc;
      else Object.assign(this.state, { sort: column, desc: true });
      this.state.offset = 0;
      void this.refresh(true);
    });

    this.el.body.addEventListener("click", (ev) => {
      const row = (ev.target as HTMLElement).closest("tr[data-index]");
      if (!row) return;
      const index = Number(row.getAttribute("data-index"));
      this.state.selected = this.state.selected === index ? null : index;
      void this.refresh(true);
    });

    this.el.scatter.addEventListener("click", (ev) => {
      const mark = (ev.target as Element).closest("circle[data-index]");
      if (!mark) return;
      const index = Number(mark.getAttribute("data-index"));
      if (this.state.selected === index) {
        this.state.selected = null; // re-click clears
      } else {
        this.state.selected = index;
        this.state.offset = Math.floor(index / this.state.limit) * this.state.limit;
      }
      void this.refresh(true).then(() => {
        document.getElementById(`rule-${index}`)?.scrollIntoView({
          block: "nearest",
        });
      });
    });

    this.el.prev.addEventListener("click", () => {
      this.state.offset = Math.max(0, this.state.offset - this.state.limit);
      void this.refresh(true);
    });
    this.el.next.addEventListener("click", () => {
      this.state.offset += this.state.limit;
      void this.refresh(true);
    });

    window.addEventListener("popstate", () => {
      this.state = decodeState(window.location.search.replace(/^\?/, ""));
      this.syncInputs();
      void this.refresh();
    });
  }

  private readInputs(): void {
    const num = (input: HTMLInputElement): number | null => {
      const v = Number(input.value);
      return input.value !== "" && Number.isFinite(v) ? v : null;
    };
    this.state.minSupport = num(this.el.inputs.minSupport);
    this.state.minConfidence = num(this.el.inputs.minConfidence);
    this.state.minLift = num(this.el.inputs.minLift);
    this.state.lhsContains = this.el.inputs.lhsContains.value;
    this.state.rhsContains = this.el.inputs.rhsContains.value;
    this.state.limit = Number(this.el.inputs.limit.value) || DEFAULT_STATE.limit;
  }

  private syncInputs(): void {
    const set = (input: HTMLInputElement, v: number | null) => {
      input.value = v === null ? "" : String(v);
    };
    set(this.el.inputs.minSupport, this.state.minSupport);
    set(this.el.inputs.minConfidence, this.state.minConfidence);
    set(this.el.inputs.minLift, this.state.minLift);
    this.el.inputs.lhsContains.value = this.state.lhsContains;
    this.el.inputs.rhsContains.value = this.state.rhsContains;
    this.el.inputs.limit.value = String(this.state.limit);
  }

  private showError(err: unknown): void {
    this.el.banner.textContent =
      err instanceof Error ? err.message : "request failed";
    this.el.banner.classList.remove("hidden");
  }

  private hideError(): void {
    this.el.banner.classList.add("hidden");
  }
}

new Explorer().start();
