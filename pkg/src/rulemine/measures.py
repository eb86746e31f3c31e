"""Interest measures computed from contingency counts against a
transaction set.

Implemented measures: support, confidence, coverage, lift, count, leverage,
conviction, improvement, oddsRatio, fishersExactTest.  All except
improvement are functions of one rule's 2x2 contingency table; improvement
compares a rule against the more general rules present in the same set.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .core import Transactions, UniverseMismatchError

__all__ = [
    "ContingencyCounts",
    "MEASURES",
    "contingency_counts",
    "fisher_exact_p",
    "odds_ratio",
    "interest_measure",
    "add_quality",
]


@dataclass(frozen=True)
class ContingencyCounts:
    """Absolute co-occurrence counts of one rule in m transactions."""

    m: int
    n_x: int
    n_y: int
    n_xy: int

    def __post_init__(self):
        if not (0 <= self.n_xy <= min(self.n_x, self.n_y)
                and max(self.n_x, self.n_y) <= self.m):
            raise ValueError(f"inconsistent contingency counts {self}")


def contingency_counts(rules, t: Transactions) -> list[ContingencyCounts]:
    """Per-rule counts of LHS, RHS and their union in the transactions."""
    if rules.item_info != t.matrix.item_info:
        raise UniverseMismatchError("rules and transactions must share a universe")
    col_masks = t.matrix.column_masks()
    full = (1 << t.n_rows) - 1

    def rows_with(mask: int) -> int:
        acc = full
        while mask:
            bit = mask & -mask
            acc &= col_masks[bit.bit_length() - 1]
            mask ^= bit
        return acc

    out = []
    m = t.n_rows
    for lm, rm in zip(rules.lhs.row_masks(), rules.rhs.row_masks()):
        rows_x = rows_with(lm)
        rows_y = rows_with(rm)
        out.append(ContingencyCounts(
            m=m,
            n_x=rows_x.bit_count(),
            n_y=rows_y.bit_count(),
            n_xy=(rows_x & rows_y).bit_count(),
        ))
    return out


def fisher_exact_p(cc: ContingencyCounts) -> float:
    """One-sided p-value: probability of at least n_xy co-occurrences under
    the hypergeometric null with the observed margins."""
    m, n_x, n_y, n_xy = cc.m, cc.n_x, cc.n_y, cc.n_xy
    hi = min(n_x, n_y)
    num = sum(math.comb(n_x, k) * math.comb(m - n_x, n_y - k)
              for k in range(n_xy, hi + 1))
    return float(Fraction(num, math.comb(m, n_y)))


def odds_ratio(cc: ContingencyCounts) -> float:
    a = cc.n_xy
    b = cc.n_x - cc.n_xy
    c = cc.n_y - cc.n_xy
    d = cc.m - cc.n_x - cc.n_y + cc.n_xy
    if b * c == 0:
        return math.nan if a * d == 0 else math.inf
    return (a * d) / (b * c)


def _support(cc):
    return cc.n_xy / cc.m


def _confidence(cc):
    if cc.n_x == 0:
        return math.nan  # zero-coverage rules are never produced by mining
    return cc.n_xy / cc.n_x


def _coverage(cc):
    return cc.n_x / cc.m


def _lift(cc):
    if cc.n_x == 0 or cc.n_y == 0:
        return math.nan
    return (cc.n_xy * cc.m) / (cc.n_x * cc.n_y)


def _count(cc):
    return cc.n_xy


def _leverage(cc):
    return _support(cc) - _coverage(cc) * (cc.n_y / cc.m)


def _conviction(cc):
    conf = _confidence(cc)
    if conf != conf:  # NaN
        return math.nan
    if conf == 1.0:
        return math.inf if cc.n_y < cc.m else math.nan
    return (1.0 - cc.n_y / cc.m) / (1.0 - conf)


MEASURES = {
    "support": _support,
    "confidence": _confidence,
    "coverage": _coverage,
    "lift": _lift,
    "count": _count,
    "leverage": _leverage,
    "conviction": _conviction,
    "oddsRatio": odds_ratio,
    "fishersExactTest": fisher_exact_p,
}

_ITEMSET_MEASURES = {"support", "count"}


def _improvement(rules, ccs) -> list[float]:
    """Confidence minus the best confidence of a strictly more general rule
    with the same RHS in the evaluated set; rules with no more general rule
    (including an empty LHS) report their own confidence."""
    conf = [_confidence(cc) for cc in ccs]
    lhs_rows = rules.lhs.rows()
    groups: dict[tuple[int, ...], list[int]] = {}
    for i, rr in enumerate(rules.rhs.rows()):
        groups.setdefault(rr, []).append(i)
    out = [0.0] * len(conf)
    for idxs in groups.values():
        best: dict[tuple[int, ...], float] = {}
        for i in idxs:
            key = lhs_rows[i]
            if key not in best or conf[i] > best[key]:
                best[key] = conf[i]
        for i in idxs:
            row = lhs_rows[i]
            general = 0.0
            for k in range(len(row)):
                for sub in combinations(row, k):
                    c2 = best.get(sub)
                    if c2 is not None and c2 > general:
                        general = c2
            out[i] = conf[i] - general
    return out


def interest_measure(assoc, names, t: Transactions) -> dict[str, list]:
    """Evaluate the named measures for every association against t.

    Returns one column per requested name, in request order.  Itemsets
    support only the itemset-level measures (support, count).
    """
    if isinstance(names, str):
        names = [names]
    for name in names:
        if name not in MEASURES and name != "improvement":
            raise ValueError(f"unknown interest measure {name!r}")

    is_rules = hasattr(assoc, "rhs")
    if not is_rules:
        bad = [n for n in names if n not in _ITEMSET_MEASURES]
        if bad:
            raise ValueError(f"measure {bad[0]!r} requires rules")
        if assoc.item_info != t.matrix.item_info:
            raise UniverseMismatchError("itemsets and transactions must share a universe")
        col_masks = t.matrix.column_masks()
        full = (1 << t.n_rows) - 1
        counts = []
        for mask in assoc.items.row_masks():
            acc = full
            while mask:
                bit = mask & -mask
                acc &= col_masks[bit.bit_length() - 1]
                mask ^= bit
            counts.append(acc.bit_count())
        m = t.n_rows
        cols = {}
        for name in names:
            cols[name] = [c / m for c in counts] if name == "support" else list(counts)
        return cols

    ccs = contingency_counts(assoc, t)
    cols = {}
    for name in names:
        if name == "improvement":
            cols[name] = _improvement(assoc, ccs)
        else:
            fn = MEASURES[name]
            cols[name] = [fn(cc) for cc in ccs]
    return cols


def add_quality(assoc, columns: dict[str, list]):
    """Extend the quality table; same-name columns are replaced."""
    n = len(assoc)
    for name, col in columns.items():
        if len(col) != n:
            raise ValueError(
                f"quality column {name!r} has {len(col)} values for {n} associations")
    merged = dict(assoc.quality)
    merged.update({k: list(v) for k, v in columns.items()})
    if hasattr(assoc, "rhs"):
        return type(assoc)(assoc.lhs, assoc.rhs, merged)
    return type(assoc)(assoc.items, merged)
