import { ExplorerState } from "./state.js";
import { MEASURE_COLUMNS, RulesPage } from "./types.js";

/** Pure HTML rendering for the rule table; event wiring lives in main.ts.
 * Every number shown is server-supplied. */

export function escapeHtml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function itemsetLabel(items: string[]): string {
  return `{${items.join(",")}}`;
}

export function formatMeasure(column: string, value: number): string {
  if (column === "count") return String(value);
  return value.toFixed(3);
}

export function renderHeaderHtml(state: ExplorerState): string {
  const cells = ['<th class="label-col">LHS</th>', '<th class="label-col">RHS</th>'];
  for (const col of MEASURE_COLUMNS) {
    const active = state.sort === col;
    const arrow = active ? (state.desc ? " ▾" : " ▴") : "";
    cells.push(
      `<th class="sortable${active ? " sorted" : ""}" data-sort="${col}">` +
        `${col}${arrow}</th>`,
    );
  }
  return `<tr>${cells.join("")}</tr>`;
}

export function renderRowsHtml(page: RulesPage, state: ExplorerState): string {
  if (page.rules.length === 0) {
    return `<tr><td class="empty" colspan="7">no rules match the current filters</td></tr>`;
  }
  return page.rules
    .map((rule, i) => {
      const index = state.offset + i;
      const selected = state.selected === index ? " selected" : "";
      const cells = [
        `<td class="label-col">${escapeHtml(itemsetLabel(rule.lhs))}</td>`,
        `<td class="label-col">${escapeHtml(itemsetLabel(rule.rhs))}</td>`,
        ...MEASURE_COLUMNS.map(
          (col) => `<td class="num">${formatMeasure(col, rule[col])}</td>`,
        ),
      ];
      return `<tr class="rule-row${selected}" data-index="${index}" id="rule-${index}">${cells.join("")}</tr>`;
    })
    .join("\n");
}

export function renderPagerText(page: RulesPage, state: ExplorerState): string {
  if (page.total === 0) return "0 rules";
  const first = Math.min(state.offset + 1, page.total);
  const last = Math.min(state.offset + page.rules.length, page.total);
  return `${first}–${last} of ${page.total} rules`;
}

export function pageCount(total: number, limit: number): number {
  return Math.max(1, Math.ceil(total / Math.max(limit, 1)));
}
