"""Build transactions from tabular data: boolean columns become items,
numeric columns are discretized into range items, nominal columns are
one-hot encoded.  Also provides synthetic transaction generation.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .core import ItemInfo, ItemMatrix, Transactions

__all__ = [
    "ColumnSpec",
    "DiscretizationError",
    "discretize",
    "transactions_from_table",
    "transactions_from_csv",
    "item_info",
    "random_transactions",
]

_TRUE = {"true", "1"}
_FALSE = {"false", "0"}


class DiscretizationError(ValueError):
    pass


@dataclass(frozen=True)
class ColumnSpec:
    """Override for one column: kind and, for numeric, the binning."""

    name: str
    kind: str  # boolean | numeric | nominal
    method: str = "frequency"  # frequency | interval | fixed
    bins: int = 3
    breaks: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("boolean", "numeric", "nominal"):
            raise ValueError(f"unknown column kind {self.kind!r}")
        if self.method not in ("frequency", "interval", "fixed"):
            raise ValueError(f"unknown discretization method {self.method!r}")
        if self.method in ("frequency", "interval") and self.bins < 2:
            raise ValueError("bin count must be at least 2")
        if self.method == "fixed":
            if not self.breaks or len(self.breaks) < 2:
                raise ValueError("fixed method requires a break list")
            if any(b >= c for b, c in zip(self.breaks, self.breaks[1:])):
                raise ValueError("fixed breaks must be strictly increasing")


def _fmt(x: float) -> str:
    """Shortest decimal rendering: no trailing zeros, round-trip safe."""
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return repr(float(x))


def _quantile(sorted_vals: Sequence[float], p: float) -> float:
    """Linear-interpolation quantile over sorted data (matches the common
    statistical default, type 7)."""
    n = len(sorted_vals)
    if n == 1:
        return sorted_vals[0]
    h = (n - 1) * p
    lo = int(h)
    hi = min(lo + 1, n - 1)
    return sorted_vals[lo] + (h - lo) * (sorted_vals[hi] - sorted_vals[lo])


def _interval_labels(breaks: Sequence[float]) -> list[str]:
    labs = []
    for i in range(len(breaks) - 1):
        close = "]" if i == len(breaks) - 2 else ")"
        labs.append(f"[{_fmt(breaks[i])},{_fmt(breaks[i + 1])}{close}")
    return labs


def discretize(values: Sequence[float], method: str = "frequency",
               bins: int = 3, breaks: Sequence[float] | None = None):
    """Map numeric values to labeled intervals.

    Returns (label per value, break list).  Intervals are half-open
    [lo, hi) except the last, which is closed.  The frequency method cuts
    at quantiles, interval at equal widths, fixed at user-given breaks.
    """
    vals = [float(v) for v in values]
    if not vals:
        raise DiscretizationError("cannot discretize an empty column")
    if any(not np.isfinite(v) for v in vals):
        raise DiscretizationError("values must be finite")
    lo, hi = min(vals), max(vals)

    if method == "fixed":
        if breaks is None:
            raise DiscretizationError("fixed method requires breaks")
        bk = [float(b) for b in breaks]
        if any(a >= b for a, b in zip(bk, bk[1:])):
            raise DiscretizationError("fixed breaks must be strictly increasing")
        if lo < bk[0] or hi > bk[-1]:
            raise DiscretizationError(
                f"breaks [{_fmt(bk[0])},{_fmt(bk[-1])}] do not cover the data "
                f"range [{_fmt(lo)},{_fmt(hi)}]")
    elif method == "interval":
        if bins < 2:
            raise DiscretizationError("bin count must be at least 2")
        if lo == hi:
            raise DiscretizationError("cannot cut a constant column into intervals")
        bk = [lo + i * (hi - lo) / bins for i in range(bins)] + [hi]
    elif method == "frequency":
        if bins < 2:
            raise DiscretizationError("bin count must be at least 2")
        if len(set(vals)) < bins:
            raise DiscretizationError(
                f"only {len(set(vals))} distinct values for {bins} frequency "
                "bins; use fewer bins or fixed breaks")
        s = sorted(vals)
        bk = [lo] + [_quantile(s, i / bins) for i in range(1, bins)] + [hi]
    else:
        raise DiscretizationError(f"unknown discretization method {method!r}")

    # collapse any duplicated cut points (heavily tied data)
    dedup = [bk[0]]
    for b in bk[1:]:
        if b > dedup[-1]:
            dedup.append(b)
    if len(dedup) < 2:
        raise DiscretizationError("breaks collapse to a single point")
    bk = dedup

    labs = _interval_labels(bk)
    out = []
    for v in vals:
        # last interval is closed on the right
        k = len(bk) - 2
        for i in range(len(bk) - 1):
            if v < bk[i + 1]:
                k = i
                break
        out.append(labs[k])
    return out, bk


def _infer_kind(values: Sequence[str]) -> str:
    non_missing = [v for v in values if v != ""]
    if all(v.lower() in _TRUE | _FALSE for v in non_missing):
        return "boolean"
    try:
        for v in non_missing:
            float(v)
        return "numeric"
    except ValueError:
        return "nominal"


def _as_columns(table) -> list[tuple[str, list[str]]]:
    if isinstance(table, Mapping):
        return [(str(k), [str(v) for v in vs]) for k, vs in table.items()]
    return [(str(k), [str(v) for v in vs]) for k, vs in table]


def transactions_from_table(table, specs: Mapping[str, ColumnSpec] | None = None,
                            transaction_ids: Sequence[str] | None = None) -> Transactions:
    """Convert labeled columns of strings into sparse transactions.

    Kinds are inferred per column (boolean, then numeric, else nominal)
    unless overridden in `specs`.  Empty cells yield no item for that row.
    Transaction ids default to the row ordinals.
    """
    columns = _as_columns(table)
    specs = dict(specs or {})
    if not columns or not columns[0][1]:
        raise ValueError("cannot convert an empty table")
    n = len(columns[0][1])
    for name, vals in columns:
        if len(vals) != n:
            raise ValueError(f"column {name!r} has {len(vals)} rows, expected {n}")
        if all(v == "" for v in vals):
            raise ValueError(f"column {name!r} has no values")

    labels: list[str] = []
    variables: list[str] = []
    levels: list[str] = []
    row_items: list[list[int]] = [[] for _ in range(n)]

    for name, vals in columns:
        spec = specs.get(name)
        kind = spec.kind if spec else _infer_kind(vals)
        if kind == "boolean":
            col = len(labels)
            labels.append(name)
            variables.append(name)
            levels.append("TRUE")
            for r, v in enumerate(vals):
                if v == "":
                    continue
                lv = v.lower()
                if lv in _TRUE:
                    row_items[r].append(col)
                elif lv not in _FALSE:
                    raise ValueError(
                        f"column {name!r} row {r}: {v!r} is not a boolean")
        elif kind == "numeric":
            present = [(r, float(v)) for r, v in enumerate(vals) if v != ""]
            method = spec.method if spec else "frequency"
            bins = spec.bins if spec else 3
            breaks = spec.breaks if spec else None
            labs, bk = discretize([v for _, v in present], method, bins, breaks)
            # one item per bin in break order, including empty bins
            seen: dict[str, int] = {}
            for lab in _interval_labels(bk):
                seen[lab] = len(labels)
                labels.append(f"{name}={lab}")
                variables.append(name)
                levels.append(lab)
            for (r, _), lab in zip(present, labs):
                row_items[r].append(seen[lab])
        else:  # nominal, one item per level, levels in sorted order
            lvls = sorted({v for v in vals if v != ""})
            pos = {}
            for lv in lvls:
                pos[lv] = len(labels)
                labels.append(f"{name}={lv}")
                variables.append(name)
                levels.append(lv)
            for r, v in enumerate(vals):
                if v != "":
                    row_items[r].append(pos[v])

    info = ItemInfo(tuple(labels), tuple(variables), tuple(levels))
    matrix = ItemMatrix.from_rows(row_items, info)
    ids = tuple(transaction_ids) if transaction_ids is not None else None
    return Transactions(matrix, ids)


def transactions_from_csv(path, specs: Mapping[str, ColumnSpec] | None = None) -> Transactions:
    """Read an RFC-4180 CSV with a header row and convert it."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError("cannot convert an empty table") from None
        rows = [row for row in reader]
    cols = [(name, [row[i] if i < len(row) else "" for row in rows])
            for i, name in enumerate(header)]
    return transactions_from_table(cols, specs)


def load_column_specs(path) -> dict[str, ColumnSpec]:
    """Column-spec file: JSON object mapping column name to spec fields."""
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    out = {}
    for name, d in raw.items():
        out[name] = ColumnSpec(
            name=name,
            kind=d.get("kind", "numeric"),
            method=d.get("method", "frequency"),
            bins=int(d.get("bins", 3)),
            breaks=tuple(d["breaks"]) if "breaks" in d else None,
        )
    return out


def item_info(t: Transactions) -> ItemInfo:
    """The label/variable/level table in item-universe order."""
    return t.matrix.item_info


def random_transactions(n_items: int, n_trans: int, density: float = 0.3,
                        seed: int = 0) -> Transactions:
    """Independent-Bernoulli random transactions, deterministic per seed."""
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must be within [0, 1]")
    rng = np.random.default_rng(seed)
    dense = rng.random((n_trans, n_items)) < density
    info = ItemInfo.from_labels([f"item{i + 1}" for i in range(n_items)])
    rows = [np.flatnonzero(dense[r]).tolist() for r in range(n_trans)]
    return Transactions(ItemMatrix.from_rows(rows, info))
