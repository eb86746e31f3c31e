"""Rule and itemset containers: quality tables, ordering, predicates
(redundant, closed, maximal, generator, significant) and CSV/JSON export.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .core import ItemInfo, ItemMatrix, Transactions, UniverseMismatchError, from_label_sets

__all__ = [
    "Itemsets",
    "Rules",
    "sort_by",
    "is_redundant",
    "is_maximal",
    "is_closed",
    "is_generator",
    "is_significant",
    "labels",
    "render",
    "export",
    "rules_from_json",
    "itemsets_from_json",
]

# canonical quality column order for exports; extras are appended as-is
_CANONICAL = ("support", "confidence", "coverage", "lift", "count")


def _check_quality(quality: Mapping[str, Sequence], n: int) -> dict[str, list]:
    out = {}
    for name, col in quality.items():
        col = list(col)
        if len(col) != n:
            raise ValueError(
                f"quality column {name!r} has {len(col)} values for {n} associations")
        if name in out:
            raise ValueError(f"duplicate quality column {name!r}")
        out[str(name)] = col
    return out


@dataclass(frozen=True)
class Itemsets:
    """A set of itemsets with a quality table aligned to its rows."""

    items: ItemMatrix
    quality: dict[str, list] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "quality",
                           _check_quality(self.quality, self.items.n_rows))

    @property
    def item_info(self) -> ItemInfo:
        return self.items.item_info

    def __len__(self) -> int:
        return self.items.n_rows

    def __getitem__(self, index) -> "Itemsets":
        from .core import select
        return select(self, index)

    def _take(self, indices) -> "Itemsets":
        q = {k: [v[i] for i in indices] for k, v in self.quality.items()}
        return Itemsets(self.items._take(indices), q)

    def _row_keys(self):
        return self.items.rows()

    def _combine(self, parts):
        cols = list(self.quality.keys())
        for p in parts:
            if list(p.quality.keys()) != cols:
                raise ValueError("combine requires identical quality columns")
        rows = []
        q = {k: [] for k in cols}
        for p in parts:
            rows.extend(p.items.rows())
            for k in cols:
                q[k].extend(p.quality[k])
        return Itemsets(ItemMatrix.from_rows(rows, self.item_info), q)

    def labels(self) -> list[str]:
        return self.items.row_labels()

    def __repr__(self):
        return f"Itemsets({len(self)} itemsets)"


@dataclass(frozen=True)
class Rules:
    """Association rules: paired LHS/RHS matrices over one item universe
    plus a quality table."""

    lhs: ItemMatrix
    rhs: ItemMatrix
    quality: dict[str, list] = field(default_factory=dict)

    def __post_init__(self):
        if self.lhs.item_info != self.rhs.item_info:
            raise UniverseMismatchError("LHS and RHS must share one item universe")
        if self.lhs.n_rows != self.rhs.n_rows:
            raise ValueError("LHS and RHS must have one row per rule")
        for i, (a, b) in enumerate(zip(self.lhs.row_masks(), self.rhs.row_masks())):
            if a & b:
                raise ValueError(f"rule {i}: LHS and RHS overlap")
        object.__setattr__(self, "quality",
                           _check_quality(self.quality, self.lhs.n_rows))

    @classmethod
    def from_label_sets(cls, lhs_sets, rhs_sets, universe,
                        quality: Mapping[str, Sequence] | None = None) -> "Rules":
        lhs = from_label_sets(lhs_sets, universe)
        rhs = from_label_sets(rhs_sets, universe)
        return cls(lhs, rhs, dict(quality or {}))

    @property
    def item_info(self) -> ItemInfo:
        return self.lhs.item_info

    def __len__(self) -> int:
        return self.lhs.n_rows

    def __getitem__(self, index) -> "Rules":
        from .core import select
        return select(self, index)

    def _take(self, indices) -> "Rules":
        q = {k: [v[i] for i in indices] for k, v in self.quality.items()}
        return Rules(self.lhs._take(indices), self.rhs._take(indices), q)

    def _row_keys(self):
        return list(zip(self.lhs.rows(), self.rhs.rows()))

    def _combine(self, parts):
        cols = list(self.quality.keys())
        for p in parts:
            if list(p.quality.keys()) != cols:
                raise ValueError("combine requires identical quality columns")
        lhs_rows, rhs_rows = [], []
        q = {k: [] for k in cols}
        for p in parts:
            lhs_rows.extend(p.lhs.rows())
            rhs_rows.extend(p.rhs.rows())
            for k in cols:
                q[k].extend(p.quality[k])
        return Rules(ItemMatrix.from_rows(lhs_rows, self.item_info),
                     ItemMatrix.from_rows(rhs_rows, self.item_info), q)

    def lhs_labels(self) -> list[str]:
        return self.lhs.row_labels()

    def rhs_labels(self) -> list[str]:
        return self.rhs.row_labels()

    def labels(self) -> list[str]:
        return [f"{a} => {b}" for a, b in zip(self.lhs_labels(), self.rhs_labels())]

    def union_masks(self) -> list[int]:
        return [a | b for a, b in zip(self.lhs.row_masks(), self.rhs.row_masks())]

    def __repr__(self):
        return f"Rules({len(self)} rules)"


# -- ordering ----------------------------------------------------------------

def sort_by(a, column: str, descending: bool = True):
    """Stable sort of an association container by one quality column."""
    if column not in a.quality:
        raise KeyError(f"no quality column {column!r}")
    col = a.quality[column]
    order = sorted(range(len(a)), key=lambda i: col[i], reverse=descending)
    # python's sort is stable; with reverse=True ties keep original order
    return a._take(order)


# -- predicates ---------------------------------------------------------------

def is_redundant(r: Rules) -> list[bool]:
    """Flag rules for which a more general rule (same RHS, strict-subset LHS)
    with the same or higher confidence exists in the set."""
    if "confidence" not in r.quality:
        raise ValueError("is_redundant requires a confidence quality column")
    conf = r.quality["confidence"]
    lhs_rows = r.lhs.rows()
    lhs_masks = r.lhs.row_masks()
    rhs_rows = r.rhs.rows()

    groups: dict[tuple[int, ...], list[int]] = {}
    for i, rr in enumerate(rhs_rows):
        groups.setdefault(rr, []).append(i)

    out = [False] * len(r)
    from itertools import combinations
    for rr, idxs in groups.items():
        best: dict[tuple[int, ...], float] = {}
        for i in idxs:
            key = lhs_rows[i]
            if key not in best or conf[i] > best[key]:
                best[key] = conf[i]
        size = len(idxs)
        for i in idxs:
            row = lhs_rows[i]
            k = len(row)
            if 2 ** k <= size:
                for kk in range(k):
                    for sub in combinations(row, kk):
                        c2 = best.get(sub)
                        if c2 is not None and c2 >= conf[i]:
                            out[i] = True
                            break
                    if out[i]:
                        break
            else:
                mi = lhs_masks[i]
                for j in idxs:
                    mj = lhs_masks[j]
                    if mj != mi and (mj & mi) == mj and conf[j] >= conf[i]:
                        out[i] = True
                        break
    return out


def _assoc_masks(a) -> list[int]:
    """Item bitmasks evaluated per association: union LHS|RHS for rules,
    the itemset itself for itemsets."""
    if isinstance(a, Rules):
        return a.union_masks()
    return a.items.row_masks()


def is_maximal(a) -> list[bool]:
    """True where no other element of the set is a strict item superset."""
    masks = _assoc_masks(a)
    uniq = set(masks)
    by_item: dict[int, list[int]] = {}
    for mk in uniq:
        m2 = mk
        while m2:
            bit = m2 & -m2
            by_item.setdefault(bit, []).append(mk)
            m2 ^= bit

    def has_strict_superset(mk: int) -> bool:
        if mk == 0:
            return len(uniq) > 1
        best = None
        m2 = mk
        while m2:
            b = m2 & -m2
            cand = by_item.get(b, [])
            if best is None or len(cand) < len(best):
                best = cand
            m2 ^= b
        for other in best or []:
            if other != mk and (other & mk) == mk:
                return True
        return False

    flags = {mk: not has_strict_superset(mk) for mk in uniq}
    return [flags[mk] for mk in masks]


def _support_counter(t: Transactions):
    col_masks = t.matrix.column_masks()
    full = (1 << t.n_rows) - 1

    def count(itemset_mask: int) -> int:
        acc = full
        m2 = itemset_mask
        while m2:
            bit = m2 & -m2
            acc &= col_masks[bit.bit_length() - 1]
            if not acc:
                return 0
            m2 ^= bit
        return acc.bit_count()

    return count


def _require_same_universe(a, t: Transactions):
    if a.item_info != t.matrix.item_info:
        raise UniverseMismatchError("predicate requires the transaction universe")


def is_closed(a, t: Transactions) -> list[bool]:
    """True where no strict superset itemset over the universe has equal
    support in the transactions."""
    _require_same_universe(a, t)
    count = _support_counter(t)
    n_cols = t.n_cols
    out = []
    for mk in _assoc_masks(a):
        c = count(mk)
        closed = True
        for j in range(n_cols):
            bit = 1 << j
            if mk & bit:
                continue
            if count(mk | bit) == c:
                closed = False
                break
        out.append(closed)
    return out


def is_generator(a, t: Transactions) -> list[bool]:
    """True where no strict subset has equal support (minimal itemsets)."""
    _require_same_universe(a, t)
    count = _support_counter(t)
    out = []
    for mk in _assoc_masks(a):
        c = count(mk)
        gen = True
        m2 = mk
        while m2:
            bit = m2 & -m2
            if count(mk ^ bit) == c:
                gen = False
                break
            m2 ^= bit
        out.append(gen)
    return out


def is_significant(r: Rules, t: Transactions, alpha: float = 0.01,
                   adjustment: str = "none") -> list[bool]:
    """One-sided Fisher exact test of LHS/RHS co-occurrence per rule."""
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must be within (0, 1)")
    if adjustment not in ("none", "bonferroni"):
        raise ValueError(f"unknown adjustment {adjustment!r}")
    from .measures import contingency_counts, fisher_exact_p
    threshold = alpha if adjustment == "none" else alpha / max(len(r), 1)
    return [fisher_exact_p(cc) < threshold for cc in contingency_counts(r, t)]


# -- rendering and export ------------------------------------------------------

def labels(a) -> list[str]:
    return a.labels()


def _ordered_columns(quality: Mapping[str, Sequence]) -> list[str]:
    cols = [c for c in _CANONICAL if c in quality]
    cols += [c for c in quality if c not in _CANONICAL]
    return cols


def render(a) -> list[dict]:
    """Table rows: label columns plus the quality columns."""
    cols = _ordered_columns(a.quality)
    out = []
    if isinstance(a, Rules):
        for i, (l, rr) in enumerate(zip(a.lhs_labels(), a.rhs_labels())):
            row = {"LHS": l, "RHS": rr}
            row.update({c: a.quality[c][i] for c in cols})
            out.append(row)
    else:
        for i, lab in enumerate(a.labels()):
            row = {"items": lab}
            row.update({c: a.quality[c][i] for c in cols})
            out.append(row)
    return out


def _num(x) -> str:
    """Round-trip-safe number formatting; infinities render as inf/-inf."""
    if isinstance(x, bool):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


def export(a, format: str = "csv") -> bytes:
    """Serialize a container. CSV columns: LHS,RHS (or items) then the
    quality columns in canonical order with extras appended.  JSON is an
    array of objects with lhs/rhs as label arrays."""
    cols = _ordered_columns(a.quality)
    if format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        if isinstance(a, Rules):
            w.writerow(["LHS", "RHS"] + cols)
            for i, (l, rr) in enumerate(zip(a.lhs_labels(), a.rhs_labels())):
                w.writerow([l, rr] + [_num(a.quality[c][i]) for c in cols])
        else:
            w.writerow(["items"] + cols)
            for i, lab in enumerate(a.labels()):
                w.writerow([lab] + [_num(a.quality[c][i]) for c in cols])
        return buf.getvalue().encode()
    if format == "json":
        items = []
        if isinstance(a, Rules):
            lhs_sets = [list(x) for x in _label_sets(a.lhs)]
            rhs_sets = [list(x) for x in _label_sets(a.rhs)]
            for i in range(len(a)):
                obj = {"lhs": lhs_sets[i], "rhs": rhs_sets[i]}
                obj.update({c: a.quality[c][i] for c in cols})
                items.append(obj)
        else:
            for i, s in enumerate(_label_sets(a.items)):
                obj = {"items": list(s)}
                obj.update({c: a.quality[c][i] for c in cols})
                items.append(obj)
        return json.dumps(items, indent=2, ensure_ascii=False).encode()
    raise ValueError(f"unknown export format {format!r}")


def _label_sets(m: ItemMatrix):
    labels_ = m.item_info.labels
    return [[labels_[j] for j in row] for row in m.rows()]


def rules_from_json(data: bytes | str, universe) -> Rules:
    """Inverse of export(rules, 'json') given the item universe."""
    raw = json.loads(data)
    lhs_sets = [obj["lhs"] for obj in raw]
    rhs_sets = [obj["rhs"] for obj in raw]
    cols: dict[str, list] = {}
    for obj in raw:
        for k in obj:
            if k not in ("lhs", "rhs") and k not in cols:
                cols[k] = []
    for obj in raw:
        for k in cols:
            cols[k].append(obj.get(k))
    return Rules.from_label_sets(lhs_sets, rhs_sets, universe, cols)


def itemsets_from_json(data: bytes | str, universe) -> Itemsets:
    raw = json.loads(data)
    sets = [obj["items"] for obj in raw]
    cols: dict[str, list] = {}
    for obj in raw:
        for k in obj:
            if k != "items" and k not in cols:
                cols[k] = []
    for obj in raw:
        for k in cols:
            cols[k].append(obj.get(k))
    return Itemsets(from_label_sets(sets, universe), cols)
