"""Frequent-itemset mining and rule induction.

Two miners over the same contract: a levelwise candidate/count loop that
scans transactions against a prefix tree of candidates, and a depth-first
miner intersecting per-item transaction-id sets.  Both enumerate exactly
the itemsets whose support (proportion of transactions) reaches the
threshold, up to the maximum length.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .assoc import Itemsets, Rules
from .core import ItemMatrix, Transactions, UniverseMismatchError

__all__ = ["MiningParams", "apriori", "eclat", "induce_rules", "min_support_count"]


@dataclass(frozen=True)
class MiningParams:
    """Thresholds and bounds for mining.

    `support` and `confidence` are proportions; `minlen`/`maxlen` bound the
    itemset length (for rules, the length of LHS plus RHS).  With minlen=1
    the rule target also yields rules with an empty LHS.
    """

    support: float = 0.1
    confidence: float = 0.8
    minlen: int = 1
    maxlen: int = 10
    target: str = "rules"  # rules | frequent-itemsets

    def __post_init__(self):
        if not 0.0 <= self.support <= 1.0:
            raise ValueError("support must be within [0, 1]")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError("confidence must be within [0, 1]")
        if self.minlen < 1:
            raise ValueError("minlen must be at least 1")
        if self.maxlen < self.minlen:
            raise ValueError("maxlen must be at least minlen")
        if self.target not in ("rules", "frequent-itemsets"):
            raise ValueError(f"unknown mining target {self.target!r}")


def min_support_count(n_trans: int, support: float) -> int:
    """Smallest absolute count c with c/n_trans >= support (at least 1)."""
    sigma = Fraction(support)
    c = 0
    est = int(sigma * n_trans)
    for cand in (est - 1, est, est + 1, est + 2):
        if cand >= 0 and Fraction(cand, n_trans) >= sigma:
            c = cand
            break
    else:
        c = n_trans
    return max(c, 1)


# -- depth-first tidset intersection -------------------------------------------

def _mine_tidsets(t: Transactions, min_count: int, max_len: int) -> dict[tuple[int, ...], int]:
    """All frequent itemsets as {sorted item tuple: absolute count}."""
    masks = t.matrix.column_masks()
    n_items = t.n_cols
    full = (1 << t.n_rows) - 1
    out: dict[tuple[int, ...], int] = {}

    def grow(prefix: tuple[int, ...], mask: int, start: int):
        for j in range(start, n_items):
            sub = mask & masks[j]
            c = sub.bit_count()
            if c >= min_count:
                items = prefix + (j,)
                out[items] = c
                if len(items) < max_len:
                    grow(items, sub, j + 1)

    grow((), full, 0)
    return out


# -- levelwise candidate generation and transaction scanning -------------------

def _mine_levelwise(t: Transactions, min_count: int, max_len: int) -> dict[tuple[int, ...], int]:
    """All frequent itemsets via candidate joins plus prefix-tree counting."""
    rows = t.matrix.rows()
    n_items = t.n_cols

    counts1 = [0] * n_items
    for row in rows:
        for j in row:
            counts1[j] += 1
    out: dict[tuple[int, ...], int] = {}
    frequent = []
    for j in range(n_items):
        if counts1[j] >= min_count:
            out[(j,)] = counts1[j]
            frequent.append((j,))

    k = 2
    while frequent and k <= max_len:
        prev = set(frequent)
        # join sets sharing a (k-2)-prefix, then prune by subset frequency
        by_prefix: dict[tuple[int, ...], list[int]] = {}
        for items in frequent:
            by_prefix.setdefault(items[:-1], []).append(items[-1])
        candidates = []
        for prefix, lasts in by_prefix.items():
            lasts.sort()
            for a, b in combinations(lasts, 2):
                cand = prefix + (a, b)
                if all(cand[:i] + cand[i + 1:] in prev for i in range(k)):
                    candidates.append(cand)
        if not candidates:
            break

        trie: dict = {}
        leaves = []
        for cand in candidates:
            node = trie
            for item in cand[:-1]:
                node = node.setdefault(item, {})
            leaf = node.setdefault(cand[-1], [0])
            leaves.append((cand, leaf))

        def walk(node, row, start, remaining):
            limit = len(row) - remaining + 1
            for idx in range(start, limit):
                child = node.get(row[idx])
                if child is not None:
                    if remaining == 1:
                        child[0] += 1
                    else:
                        walk(child, row, idx + 1, remaining - 1)

        for row in rows:
            if len(row) >= k:
                walk(trie, row, 0, k)

        frequent = []
        for cand, leaf in leaves:
            if leaf[0] >= min_count:
                out[cand] = leaf[0]
                frequent.append(cand)
        frequent.sort()
        k += 1
    return out


# -- containers -----------------------------------------------------------------

def _itemsets_from_counts(counts: dict[tuple[int, ...], int], t: Transactions,
                          minlen: int, maxlen: int) -> Itemsets:
    m = t.n_rows
    keys = sorted((z for z in counts if minlen <= len(z) <= maxlen),
                  key=lambda z: (len(z), z))
    matrix = ItemMatrix.from_rows(keys, t.matrix.item_info)
    support = [counts[z] / m for z in keys]
    count = [counts[z] for z in keys]
    return Itemsets(matrix, {"support": support, "count": count})


def _rules_from_counts(counts: dict[tuple[int, ...], int], t: Transactions,
                       confidence: float, minlen: int, maxlen: int) -> Rules:
    m = t.n_rows
    picked = []  # (lhs tuple, rhs item, n_xy, n_x)
    for z, n_xy in counts.items():
        if not minlen <= len(z) <= maxlen:
            continue
        if len(z) == 1:
            # empty LHS: coverage is the whole database
            if n_xy / m >= confidence:
                picked.append(((), z[0], n_xy, m))
            continue
        for y in z:
            lhs = tuple(x for x in z if x != y)
            n_x = counts[lhs]
            if n_xy / n_x >= confidence:
                picked.append((lhs, y, n_xy, n_x))
    picked.sort(key=lambda p: (len(p[0]), p[0], p[1]))

    info = t.matrix.item_info
    lhs_m = ItemMatrix.from_rows([p[0] for p in picked], info)
    rhs_m = ItemMatrix.from_rows([(p[1],) for p in picked], info)
    counts_y = {z[0]: c for z, c in counts.items() if len(z) == 1}
    quality = {"support": [], "confidence": [], "coverage": [], "lift": [], "count": []}
    for lhs, y, n_xy, n_x in picked:
        n_y = counts_y[y]
        quality["support"].append(n_xy / m)
        quality["confidence"].append(n_xy / n_x)
        quality["coverage"].append(n_x / m)
        quality["lift"].append((n_xy * m) / (n_x * n_y))
        quality["count"].append(n_xy)
    return Rules(lhs_m, rhs_m, quality)


# -- public API -------------------------------------------------------------------

def apriori(t: Transactions, params: MiningParams = MiningParams()):
    """Levelwise mining.  Returns Rules or Itemsets depending on the target.

    Rules have a single-item RHS, satisfy the support threshold on the
    LHS-RHS union and the confidence threshold, and carry support,
    confidence, coverage, lift and count quality columns.
    """
    if t.n_rows == 0:
        raise ValueError("cannot mine an empty transaction set")
    min_count = min_support_count(t.n_rows, params.support)
    counts = _mine_levelwise(t, min_count, params.maxlen)
    if params.target == "frequent-itemsets":
        return _itemsets_from_counts(counts, t, params.minlen, params.maxlen)
    return _rules_from_counts(counts, t, params.confidence,
                              params.minlen, params.maxlen)


def eclat(t: Transactions, params: MiningParams = MiningParams(target="frequent-itemsets")) -> Itemsets:
    """Depth-first mining over per-item transaction-id sets.

    Produces the same frequent itemsets as apriori() with the
    frequent-itemsets target; induce rules separately if needed.
    """
    if params.target == "rules":
        raise ValueError("eclat mines frequent itemsets; use induce_rules for rules")
    if t.n_rows == 0:
        raise ValueError("cannot mine an empty transaction set")
    min_count = min_support_count(t.n_rows, params.support)
    counts = _mine_tidsets(t, min_count, params.maxlen)
    return _itemsets_from_counts(counts, t, params.minlen, params.maxlen)


def induce_rules(fi: Itemsets, t: Transactions, confidence: float = 0.8) -> Rules:
    """Rules with single-item RHS from the supplied itemsets, with supports
    recounted against the transactions.

    Every itemset contributes one candidate rule per member item (and the
    empty-LHS rule for single-item itemsets); candidates whose confidence
    reaches the threshold are kept.
    """
    if fi.item_info != t.matrix.item_info:
        raise UniverseMismatchError("itemsets were not mined from these transactions")
    if not 0.0 <= confidence <= 1.0:
        raise ValueError("confidence must be within [0, 1]")
    m = t.n_rows
    col_masks = t.matrix.column_masks()
    full = (1 << m) - 1
    cache: dict[tuple[int, ...], int] = {(): m}

    def count(items: tuple[int, ...]) -> int:
        got = cache.get(items)
        if got is None:
            acc = full
            for j in items:
                acc &= col_masks[j]
            got = acc.bit_count()
            cache[items] = got
        return got

    picked = []
    for z in fi.items.rows():
        n_xy = count(z)
        for y in z:
            lhs = tuple(x for x in z if x != y)
            n_x = count(lhs)
            if n_x == 0:
                continue  # zero-coverage rules are never emitted
            if n_xy / n_x >= confidence:
                picked.append((lhs, y, n_xy, n_x))
    picked.sort(key=lambda p: (len(p[0]), p[0], p[1]))

    info = t.matrix.item_info
    lhs_m = ItemMatrix.from_rows([p[0] for p in picked], info)
    rhs_m = ItemMatrix.from_rows([(p[1],) for p in picked], info)
    quality = {"support": [], "confidence": [], "coverage": [], "lift": [], "count": []}
    for lhs, y, n_xy, n_x in picked:
        n_y = count((y,))
        quality["support"].append(n_xy / m)
        quality["confidence"].append(n_xy / n_x)
        quality["coverage"].append(n_x / m)
        quality["lift"].append((n_xy * m) / (n_x * n_y))
        quality["count"].append(n_xy)
    return Rules(lhs_m, rhs_m, quality)
