"""Sparse binary item matrices: the shared representation for transactions,
itemsets and rule sides.

Rows are transactions or itemsets, columns are items.  Storage is compressed
sparse column (CSC); row-major views are materialized lazily for containment
scans.  All objects are immutable after construction.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "ItemInfo",
    "ItemMatrix",
    "Transactions",
    "UniverseMismatchError",
    "UnknownLabelError",
    "from_label_sets",
    "select",
    "unique_rows",
    "sample_rows",
    "combine",
    "row_is_subset_of",
    "export_dense",
    "export_label_sets",
    "export_sparse_triplets",
    "dense_csv",
    "triplets_csv",
    "label_sets_json",
]


class UnknownLabelError(ValueError):
    """An item label is not part of the item universe."""


class UniverseMismatchError(ValueError):
    """Two objects do not share the same item universe."""


@dataclass(frozen=True)
class ItemInfo:
    """Per-item metadata: label, source variable and level, one row per column.

    Boolean-source items use level "TRUE" and label == variable; derived
    items (discretized or one-hot) use label == "variable=level".
    """

    labels: tuple[str, ...]
    variables: tuple[str, ...]
    levels: tuple[str, ...]

    def __post_init__(self):
        if not (len(self.labels) == len(self.variables) == len(self.levels)):
            raise ValueError("item info columns must have equal length")
        seen = set()
        for lab in self.labels:
            if not lab:
                raise ValueError("item labels must be non-empty")
            if lab in seen:
                raise ValueError(f"duplicate item label {lab!r}")
            seen.add(lab)

    @classmethod
    def from_labels(cls, labels: Iterable[str]) -> "ItemInfo":
        """Item info for plain boolean items: variable == label, level TRUE."""
        labels = tuple(labels)
        return cls(labels, labels, ("TRUE",) * len(labels))

    def __len__(self) -> int:
        return len(self.labels)

    def rows(self) -> list[tuple[str, str, str]]:
        return list(zip(self.labels, self.variables, self.levels))

    def index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}


def _as_item_info(universe) -> ItemInfo:
    if isinstance(universe, ItemInfo):
        return universe
    info = getattr(universe, "item_info", None)
    if isinstance(info, ItemInfo):
        return info
    return ItemInfo.from_labels(universe)


class ItemMatrix:
    """Immutable sparse binary matrix with item labels on the columns."""

    __slots__ = ("n_rows", "n_cols", "col_ptr", "row_idx", "item_info",
                 "_rows", "_masks")

    def __init__(self, n_rows: int, col_ptr: Sequence[int],
                 row_idx: Sequence[int], item_info: ItemInfo):
        self.n_rows = int(n_rows)
        self.n_cols = len(item_info)
        self.col_ptr = tuple(col_ptr)
        self.row_idx = tuple(row_idx)
        self.item_info = item_info
        self._rows = None
        self._masks = None
        self._validate()

    def _validate(self):
        if len(self.col_ptr) != self.n_cols + 1:
            raise ValueError("column pointer length mismatch")
        if self.col_ptr[0] != 0 or self.col_ptr[-1] != len(self.row_idx):
            raise ValueError("column pointers do not span the stored entries")
        for j in range(self.n_cols):
            lo, hi = self.col_ptr[j], self.col_ptr[j + 1]
            if hi < lo:
                raise ValueError("column pointers must be non-decreasing")
            prev = -1
            for r in self.row_idx[lo:hi]:
                if not 0 <= r < self.n_rows:
                    raise ValueError(f"row index {r} out of range")
                if r <= prev:
                    raise ValueError("duplicate or unsorted entries in column")
                prev = r

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], item_info: ItemInfo) -> "ItemMatrix":
        """Build from per-row column indices (duplicates collapsed)."""
        n_cols = len(item_info)
        cols: list[list[int]] = [[] for _ in range(n_cols)]
        n_rows = 0
        for r, row in enumerate(rows):
            n_rows = r + 1
            for c in sorted(set(row)):
                if not 0 <= c < n_cols:
                    raise ValueError(f"column index {c} out of range in row {r}")
                cols[c].append(r)
        col_ptr = [0]
        row_idx: list[int] = []
        for c in range(n_cols):
            row_idx.extend(cols[c])
            col_ptr.append(len(row_idx))
        return cls(n_rows, col_ptr, row_idx, item_info)

    @classmethod
    def empty(cls, n_rows: int, item_info: ItemInfo) -> "ItemMatrix":
        return cls(n_rows, (0,) * (len(item_info) + 1), (), item_info)

    # -- views -------------------------------------------------------------

    @property
    def n_stored(self) -> int:
        return len(self.row_idx)

    def rows(self) -> tuple[tuple[int, ...], ...]:
        """Row-major view: sorted column indices per row (cached)."""
        if self._rows is None:
            acc: list[list[int]] = [[] for _ in range(self.n_rows)]
            for j in range(self.n_cols):
                for r in self.row_idx[self.col_ptr[j]:self.col_ptr[j + 1]]:
                    acc[r].append(j)
            self._rows = tuple(tuple(a) for a in acc)
        return self._rows

    def row_masks(self) -> tuple[int, ...]:
        """Per-row column bitmask (bit j set iff item j present)."""
        if self._masks is None:
            masks = []
            for row in self.rows():
                m = 0
                for j in row:
                    m |= 1 << j
                masks.append(m)
            self._masks = tuple(masks)
        return self._masks

    def column_masks(self) -> list[int]:
        """Per-column row bitmask (bit r set iff row r contains the item)."""
        out = []
        for j in range(self.n_cols):
            m = 0
            for r in self.row_idx[self.col_ptr[j]:self.col_ptr[j + 1]]:
                m |= 1 << r
            out.append(m)
        return out

    def row_cardinalities(self) -> list[int]:
        return [len(r) for r in self.rows()]

    def row_labels(self) -> list[str]:
        """Render every row as "{label,label,...}" in universe order."""
        labels = self.item_info.labels
        return ["{" + ",".join(labels[j] for j in row) + "}" for row in self.rows()]

    def labels(self) -> list[str]:
        return self.row_labels()

    # -- slicing -----------------------------------------------------------

    def _take(self, indices: Sequence[int]) -> "ItemMatrix":
        rows = self.rows()
        return ItemMatrix.from_rows([rows[i] for i in indices], self.item_info)

    def __getitem__(self, index) -> "ItemMatrix":
        return select(self, index)

    def __len__(self) -> int:
        return self.n_rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, ItemMatrix):
            return NotImplemented
        return (self.n_rows == other.n_rows
                and self.item_info == other.item_info
                and self.col_ptr == other.col_ptr
                and self.row_idx == other.row_idx)

    def __hash__(self):
        return hash((self.n_rows, self.col_ptr, self.row_idx, self.item_info.labels))

    def __repr__(self):
        return (f"ItemMatrix({self.n_rows} rows, {self.n_cols} items, "
                f"{self.n_stored} stored)")


@dataclass(frozen=True)
class Transactions:
    """An item matrix whose rows are the transactions of the database."""

    matrix: ItemMatrix
    transaction_ids: tuple[str, ...] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        ids = self.transaction_ids
        if ids is None:
            ids = tuple(str(i) for i in range(self.matrix.n_rows))
        else:
            ids = tuple(str(i) for i in ids)
        object.__setattr__(self, "transaction_ids", ids)
        if len(ids) != self.matrix.n_rows:
            raise ValueError("one transaction id per row required")
        if len(set(ids)) != len(ids):
            raise ValueError("transaction ids must be unique")

    @property
    def n_rows(self) -> int:
        return self.matrix.n_rows

    @property
    def n_cols(self) -> int:
        return self.matrix.n_cols

    @property
    def item_info(self) -> ItemInfo:
        return self.matrix.item_info

    def _take(self, indices: Sequence[int]) -> "Transactions":
        return Transactions(self.matrix._take(indices),
                            tuple(self.transaction_ids[i] for i in indices))

    def __getitem__(self, index) -> "Transactions":
        return select(self, index)

    def __len__(self) -> int:
        return self.matrix.n_rows

    def __repr__(self):
        return (f"Transactions({self.n_rows} transactions, "
                f"{self.n_cols} items)")


# -- label-list construction ----------------------------------------------

def from_label_sets(sets: Iterable[Iterable[str]], universe) -> ItemMatrix:
    """Translate lists of item labels into the sparse representation.

    `universe` may be an ItemInfo, an ItemMatrix/Transactions (whose universe
    is reused) or a plain list of labels.  Duplicate labels within one set
    collapse; unknown labels raise UnknownLabelError naming label and row.
    """
    info = _as_item_info(universe)
    index = info.index()
    rows = []
    for r, labels in enumerate(sets):
        row = []
        for lab in labels:
            if lab not in index:
                raise UnknownLabelError(f"unknown label {lab!r} in row {r}")
            row.append(index[lab])
        rows.append(row)
    return ItemMatrix.from_rows(rows, info)


# -- row selection ----------------------------------------------------------

def _normalize_index(index, n_rows: int) -> list[int]:
    if isinstance(index, slice):
        return list(range(*index.indices(n_rows)))
    if isinstance(index, range):
        index = list(index)
    if not isinstance(index, (list, tuple, np.ndarray)):
        raise TypeError("index must be a slice, an index list or a boolean mask")
    items = list(index)
    if not items:
        return []
    if all(isinstance(i, (bool, np.bool_)) for i in items):
        if len(items) != n_rows:
            raise ValueError(
                f"boolean mask length {len(items)} != row count {n_rows}")
        return [i for i, keep in enumerate(items) if keep]
    out = []
    for i in items:
        i = int(i)
        if i < 0:
            i += n_rows
        if not 0 <= i < n_rows:
            raise IndexError(f"row index {i} out of range for {n_rows} rows")
        out.append(i)
    return out


def select(obj, index):
    """Select rows of a matrix, transactions or association container.

    Accepts a slice, a list of row indices, or a boolean mask of full length.
    Rows are returned in selection order; quality rows follow in lockstep.
    """
    indices = _normalize_index(index, len(obj))
    return obj._take(indices)


def unique_rows(obj):
    """Drop duplicate rows, keeping the first occurrence in order."""
    seen = set()
    keep = []
    for i, key in enumerate(obj._row_keys() if hasattr(obj, "_row_keys")
                            else _matrix_row_keys(obj)):
        if key not in seen:
            seen.add(key)
            keep.append(i)
    return obj._take(keep)


def _matrix_row_keys(obj):
    m = obj.matrix if isinstance(obj, Transactions) else obj
    return m.rows()


def sample_rows(obj, k: int, seed: int):
    """Uniform sample of k rows without replacement, deterministic per seed."""
    n = len(obj)
    if k > n:
        raise ValueError(f"cannot sample {k} rows from {n}")
    rng = random.Random(seed)
    return obj._take(rng.sample(range(n), k))


def combine(parts: Sequence):
    """Stack objects of one kind row-wise; universes must be identical."""
    parts = list(parts)
    if not parts:
        raise ValueError("combine requires at least one object")
    first = parts[0]
    info = _as_item_info(first)
    for p in parts[1:]:
        if _as_item_info(p) != info:
            raise UniverseMismatchError("combine requires identical item universes")
    return first._combine(parts) if hasattr(first, "_combine") else _combine_basic(parts)


def _combine_basic(parts):
    first = parts[0]
    if isinstance(first, Transactions):
        rows = []
        ids = []
        for p in parts:
            rows.extend(p.matrix.rows())
            ids.extend(p.transaction_ids)
        return Transactions(ItemMatrix.from_rows(rows, first.item_info), tuple(ids))
    rows = []
    for p in parts:
        rows.extend(p.rows())
    return ItemMatrix.from_rows(rows, first.item_info)


# -- containment -------------------------------------------------------------

def row_is_subset_of(m: ItemMatrix, t) -> np.ndarray:
    """Boolean matrix: entry (i, j) iff row i of `m` is a subset of row j of `t`."""
    tm = t.matrix if isinstance(t, Transactions) else t
    if m.item_info != tm.item_info:
        raise UniverseMismatchError("containment requires a shared item universe")
    left = m.row_masks()
    right = tm.row_masks()
    out = np.zeros((m.n_rows, tm.n_rows), dtype=bool)
    for i, a in enumerate(left):
        for j, b in enumerate(right):
            out[i, j] = (a & b) == a
    return out


# -- exports -----------------------------------------------------------------

def export_dense(m) -> np.ndarray:
    """0/1 integer matrix."""
    mm = m.matrix if isinstance(m, Transactions) else m
    out = np.zeros((mm.n_rows, mm.n_cols), dtype=int)
    for j in range(mm.n_cols):
        for r in mm.row_idx[mm.col_ptr[j]:mm.col_ptr[j + 1]]:
            out[r, j] = 1
    return out


def export_label_sets(m) -> list[list[str]]:
    """Per-row lists of item labels, universe order within each row."""
    mm = m.matrix if isinstance(m, Transactions) else m
    labels = mm.item_info.labels
    return [[labels[j] for j in row] for row in mm.rows()]


def export_sparse_triplets(m) -> list[tuple[int, int]]:
    """(row, col) pairs of the stored bits, column-major order."""
    mm = m.matrix if isinstance(m, Transactions) else m
    out = []
    for j in range(mm.n_cols):
        for r in mm.row_idx[mm.col_ptr[j]:mm.col_ptr[j + 1]]:
            out.append((r, j))
    return out


def dense_csv(m) -> bytes:
    """Dense export as CSV of 0/1 with the item labels as header."""
    mm = m.matrix if isinstance(m, Transactions) else m
    import csv
    import io
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(mm.item_info.labels)
    for row in export_dense(mm).tolist():
        w.writerow(row)
    return buf.getvalue().encode()


def triplets_csv(m) -> bytes:
    """Triplet export as a two-column CSV (row,col), zero-based."""
    import csv
    import io
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["row", "col"])
    for r, c in export_sparse_triplets(m):
        w.writerow([r, c])
    return buf.getvalue().encode()


def label_sets_json(m) -> bytes:
    """Label-set export as a JSON array of arrays of strings."""
    return json.dumps(export_label_sets(m), ensure_ascii=False).encode()
