import csv
import io
import json
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rulemine import (
    ItemInfo,
    ItemMatrix,
    Transactions,
    UniverseMismatchError,
    UnknownLabelError,
    combine,
    datasets,
    from_label_sets,
    row_is_subset_of,
    sample_rows,
    select,
    unique_rows,
)
from rulemine.core import (
    dense_csv,
    export_dense,
    export_label_sets,
    export_sparse_triplets,
    label_sets_json,
    triplets_csv,
)


def small_universe(n=4):
    return ItemInfo.from_labels([f"i{k}" for k in range(n)])


def random_matrix(rng, n_rows, n_cols):
    info = ItemInfo.from_labels([f"i{k}" for k in range(n_cols)])
    rows = [[c for c in range(n_cols) if rng.random() < 0.4] for _ in range(n_rows)]
    return ItemMatrix.from_rows(rows, info)


# -- construction -------------------------------------------------------------

def test_from_label_sets_zoo_listing(zoo):
    m = from_label_sets(
        [["hair", "milk", "predator"], ["hair", "tail", "predator"], ["fins"]],
        zoo)
    assert (m.n_rows, m.n_cols) == (3, 25)
    assert m.row_cardinalities() == [3, 3, 1]


def test_from_label_sets_empty_set_row():
    m = from_label_sets([[]], small_universe(5))
    assert (m.n_rows, m.n_cols) == (1, 5)
    assert m.n_stored == 0


def test_from_label_sets_unknown_label(zoo):
    with pytest.raises(UnknownLabelError) as exc:
        from_label_sets([["wings"]], zoo)
    assert "wings" in str(exc.value)
    assert "row 0" in str(exc.value)


def test_from_label_sets_duplicates_collapse():
    m = from_label_sets([["i1", "i1", "i0"]], small_universe())
    assert m.row_cardinalities() == [2]


def test_invalid_matrix_rejected():
    info = small_universe(2)
    with pytest.raises(ValueError):
        ItemMatrix(1, (0, 1, 2), (0, 1), info)  # row index 1 out of range
    with pytest.raises(ValueError):
        ItemMatrix(2, (0, 2), (0, 0), info)  # duplicate entry, bad ptr len


# -- selection -----------------------------------------------------------------

def test_select_identity_slice():
    m = from_label_sets([["i0"], ["i1"], ["i0", "i2"]], small_universe())
    assert select(m, slice(0, m.n_rows)) == m
    assert m[0:3] == m


def test_select_preserves_order_and_universe():
    m = from_label_sets([["i0"], ["i1"], ["i2"]], small_universe())
    picked = select(m, [2, 0])
    assert export_label_sets(picked) == [["i2"], ["i0"]]
    assert picked.item_info == m.item_info


def test_select_bool_mask_and_errors():
    m = from_label_sets([["i0"], ["i1"], ["i2"]], small_universe())
    assert export_label_sets(m[[True, False, True]]) == [["i0"], ["i2"]]
    with pytest.raises(ValueError):
        select(m, [True, False])
    with pytest.raises(IndexError):
        select(m, [3])


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_select_composes(data):
    rng = random.Random(data.draw(st.integers(0, 10_000)))
    m = random_matrix(rng, data.draw(st.integers(1, 8)), 5)
    a = data.draw(st.lists(st.integers(0, m.n_rows - 1), max_size=8))
    b = data.draw(st.lists(st.integers(0, max(len(a) - 1, 0)), max_size=8))
    if b and not a:
        b = []
    left = select(select(m, a), b)
    right = select(m, [a[i] for i in b])
    assert left == right


def test_transactions_selection_keeps_ids():
    t = Transactions(from_label_sets([["i0"], ["i1"]], small_universe()),
                     ("a", "b"))
    picked = t[[1]]
    assert picked.transaction_ids == ("b",)


# -- unique / sample / combine --------------------------------------------------

def test_unique_rows_keeps_first():
    m = from_label_sets([["i0"], ["i0"], ["i1"]], small_universe())
    u = unique_rows(m)
    assert export_label_sets(u) == [["i0"], ["i1"]]


def test_sample_rows_deterministic():
    m = from_label_sets([[f"i{k}"] for k in range(4)], small_universe())
    assert export_label_sets(sample_rows(m, 2, seed=7)) == \
        export_label_sets(sample_rows(m, 2, seed=7))
    with pytest.raises(ValueError):
        sample_rows(m, 5, seed=0)


def test_combine_single_and_additivity():
    a = from_label_sets([["i0"], ["i1"]], small_universe())
    b = from_label_sets([["i2"]], small_universe())
    assert combine([a]) == a
    assert combine([a, b]).n_rows == a.n_rows + b.n_rows
    assert export_label_sets(combine([a, b])) == [["i0"], ["i1"], ["i2"]]


def test_combine_universe_mismatch():
    a = from_label_sets([["i0"]], small_universe(3))
    b = from_label_sets([["i0"]], small_universe(4))
    with pytest.raises(UniverseMismatchError):
        combine([a, b])


def test_combine_then_select_first_part():
    a = from_label_sets([["i0"], ["i1", "i2"]], small_universe())
    b = from_label_sets([["i3"]], small_universe())
    both = combine([a, b])
    assert select(both, slice(0, a.n_rows)) == a


# -- containment -----------------------------------------------------------------

def test_empty_row_subset_of_everything():
    m = from_label_sets([[]], small_universe())
    t = Transactions(from_label_sets([["i0"], []], small_universe()))
    assert row_is_subset_of(m, t).all()


def test_subset_missing_item(zoo):
    m = from_label_sets([["hair", "milk"]], zoo)
    t = Transactions(from_label_sets([["hair"]], zoo))
    assert not row_is_subset_of(m, t)[0, 0]


def test_subset_matches_naive_double_loop():
    rng = random.Random(20240817)
    for _ in range(25):
        n_cols = rng.randint(1, 16)
        info = ItemInfo.from_labels([f"i{k}" for k in range(n_cols)])
        left = ItemMatrix.from_rows(
            [[c for c in range(n_cols) if rng.random() < 0.3]
             for _ in range(rng.randint(1, 16))], info)
        right = Transactions(ItemMatrix.from_rows(
            [[c for c in range(n_cols) if rng.random() < 0.5]
             for _ in range(rng.randint(1, 16))], info))
        got = row_is_subset_of(left, right)
        lsets = [set(r) for r in left.rows()]
        rsets = [set(r) for r in right.matrix.rows()]
        for i, a in enumerate(lsets):
            for j, b in enumerate(rsets):
                naive = all(x in b for x in a)
                assert got[i, j] == naive


def test_subset_counts_reproduce_supports(zoo):
    # support of each itemset = row-wise containment count / m,
    # cross-checked by an exhaustive per-transaction scan
    m = from_label_sets([["fins"], ["hair", "milk"], ["type=fish", "fins"]], zoo)
    counts = row_is_subset_of(m, zoo).sum(axis=1)
    tsets = [set(r) for r in zoo.matrix.rows()]
    for i, row in enumerate(m.rows()):
        expect = sum(1 for t in tsets if set(row) <= t)
        assert counts[i] == expect


def test_universe_mismatch_containment():
    m = from_label_sets([["i0"]], small_universe(3))
    t = Transactions(from_label_sets([["i0"]], small_universe(4)))
    with pytest.raises(UniverseMismatchError):
        row_is_subset_of(m, t)


# -- exports ----------------------------------------------------------------------

def test_dense_single_bit():
    m = from_label_sets([["i1"]], small_universe(2))
    assert export_dense(m).tolist() == [[0, 1]]


def test_label_set_round_trip():
    rng = random.Random(7)
    m = random_matrix(rng, 6, 5)
    again = from_label_sets(export_label_sets(m), m.item_info)
    assert again == m


def test_triplets_count_and_empty():
    m = from_label_sets([["i0", "i1"], ["i2"]], small_universe())
    assert len(export_sparse_triplets(m)) == m.n_stored == 3
    empty = ItemMatrix.empty(3, small_universe())
    assert export_sparse_triplets(empty) == []


def test_zoo_dense_row_sums_match_source(zoo):
    # recount from the source CSV: true booleans + one legs bin + one type item
    dense = export_dense(zoo)
    assert dense.shape == (101, 25)
    with open(datasets.zoo_csv_path(), newline="") as fh:
        reader = csv.DictReader(fh)
        for r, rec in enumerate(reader):
            bools = sum(1 for k, v in rec.items()
                        if k not in ("legs", "type") and v == "True")
            assert dense[r].sum() == bools + 2


def test_csv_and_json_exports_parse_back():
    m = from_label_sets([["i0", "i2"], []], small_universe())
    reader = csv.reader(io.StringIO(dense_csv(m).decode()))
    rows = list(reader)
    assert rows[0] == list(m.item_info.labels)
    assert rows[1] == ["1", "0", "1", "0"]

    treader = csv.reader(io.StringIO(triplets_csv(m).decode()))
    assert next(treader) == ["row", "col"]
    assert [(int(a), int(b)) for a, b in treader] == export_sparse_triplets(m)

    assert json.loads(label_sets_json(m)) == export_label_sets(m)


def test_item_info_validation():
    with pytest.raises(ValueError):
        ItemInfo(("a", "a"), ("a", "a"), ("TRUE", "TRUE"))
    with pytest.raises(ValueError):
        ItemInfo(("",), ("x",), ("TRUE",))


def test_transaction_id_validation():
    m = from_label_sets([["i0"], ["i1"]], small_universe())
    with pytest.raises(ValueError):
        Transactions(m, ("a",))
    with pytest.raises(ValueError):
        Transactions(m, ("a", "a"))


def test_np_integer_indices_accepted():
    m = from_label_sets([["i0"], ["i1"]], small_universe())
    assert export_label_sets(m[np.array([1])]) == [["i1"]]
