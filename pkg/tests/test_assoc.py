import csv
import io
import math
import random
from itertools import combinations

import pytest

from rulemine import (
    ItemInfo,
    ItemMatrix,
    MiningParams,
    Transactions,
    apriori,
    eclat,
    combine,
    is_closed,
    is_generator,
    is_maximal,
    is_redundant,
    is_significant,
    select,
    sort_by,
    unique_rows,
)
from rulemine.assoc import (
    Itemsets,
    Rules,
    export,
    itemsets_from_json,
    render,
    rules_from_json,
)
from rulemine.core import from_label_sets


def small_universe(n=6):
    return ItemInfo.from_labels([f"i{k}" for k in range(n)])


def rules_with_conf(pairs, universe, confs):
    lhs = [p[0] for p in pairs]
    rhs = [p[1] for p in pairs]
    return Rules.from_label_sets(lhs, rhs, universe, {"confidence": list(confs)})


# -- sorting -----------------------------------------------------------------------

def test_sort_single_rule_identity(zoo):
    r = Rules.from_label_sets([["fins"]], [["type=fish"]], zoo,
                              {"confidence": [0.76]})
    s = sort_by(r, "confidence")
    assert s.lhs == r.lhs and s.quality == r.quality


def test_sort_idempotent(zoo_rules_small):
    once = sort_by(zoo_rules_small, "confidence")
    twice = sort_by(once, "confidence")
    assert once.lhs == twice.lhs and once.rhs == twice.rhs
    assert once.quality == twice.quality


def test_sort_stable_on_ties():
    u = small_universe()
    r = rules_with_conf([(["i0"], ["i1"]), (["i2"], ["i3"]), (["i4"], ["i5"])],
                        u, [0.5, 0.9, 0.5])
    s = sort_by(r, "confidence")
    assert s.lhs.rows() == ((2,), (0,), (4,))  # ties keep original order


def test_sort_missing_column(zoo_rules_small):
    with pytest.raises(KeyError):
        sort_by(zoo_rules_small, "nonsense")


def test_zoo_top_confidence_block(zoo_rules):
    top = sort_by(zoo_rules, "confidence")[0:3]
    assert top.quality["confidence"] == [1.0, 1.0, 1.0]


def test_zoo_golden_rules_present(zoo_rules):
    labels = zoo_rules.labels()
    q = zoo_rules.quality
    idx = labels.index("{type=amphibian} => {aquatic}")
    assert (round(q["support"][idx], 2), q["confidence"][idx],
            round(q["lift"][idx], 2), q["count"][idx]) == (0.04, 1.0, 2.81, 4)
    idx = labels.index("{type=amphibian} => {legs=[4,8]}")
    assert (round(q["support"][idx], 2), q["confidence"][idx],
            round(q["lift"][idx], 2), q["count"][idx]) == (0.04, 1.0, 1.98, 4)
    idx = labels.index("{type=amphibian} => {eggs}")
    assert (round(q["support"][idx], 2), q["confidence"][idx],
            round(q["lift"][idx], 2), q["count"][idx]) == (0.04, 1.0, 1.71, 4)


# -- redundancy ----------------------------------------------------------------------

def test_redundant_direct_definition():
    u = small_universe()
    r = rules_with_conf([([], ["i1"]), (["i0"], ["i1"])], u, [0.74, 0.70])
    assert is_redundant(r) == [False, True]


def test_empty_lhs_never_redundant(zoo_rules_small):
    flags = is_redundant(zoo_rules_small)
    for i, lhs in enumerate(zoo_rules_small.lhs.rows()):
        if not lhs:
            assert not flags[i]


def test_redundancy_needs_same_rhs():
    u = small_universe()
    r = rules_with_conf([([], ["i1"]), (["i0"], ["i2"])], u, [0.9, 0.5])
    assert is_redundant(r) == [False, False]


def test_redundant_monotone_under_confidence_increase():
    u = small_universe()
    base = [([], ["i1"]), (["i0"], ["i1"])]
    flagged = rules_with_conf(base, u, [0.70, 0.70])
    assert is_redundant(flagged)[1]
    raised = rules_with_conf(base, u, [0.95, 0.70])
    assert is_redundant(raised)[1]


def test_refilter_then_rerun_is_all_false(zoo_rules_small):
    flags = is_redundant(zoo_rules_small)
    kept = select(zoo_rules_small, [not f for f in flags])
    assert not any(is_redundant(kept))


def test_zoo_nonredundant_count_regression(zoo_rules):
    # frozen from this implementation: kept rules whose confidence strictly
    # exceeds every more general rule in the set
    flags = is_redundant(zoo_rules)
    assert len(flags) - sum(flags) == 770


def test_redundant_requires_confidence():
    u = small_universe()
    r = Rules.from_label_sets([["i0"]], [["i1"]], u)
    with pytest.raises(ValueError):
        is_redundant(r)


# -- closed / maximal / generator ------------------------------------------------------

def test_maximal_basic():
    u = small_universe()
    fi = Itemsets(from_label_sets([["i0"], ["i0", "i1"]], u))
    assert is_maximal(fi) == [False, True]


def test_closed_basic():
    # every transaction containing a also contains b -> {a} is not closed
    u = small_universe(2)
    t = Transactions(from_label_sets([["i0", "i1"], ["i0", "i1"], ["i1"]], u))
    fi = Itemsets(from_label_sets([["i0"], ["i0", "i1"]], u))
    assert is_closed(fi, t) == [False, True]


def test_generator_basic():
    u = small_universe(2)
    t = Transactions(from_label_sets([["i0", "i1"], ["i0", "i1"], []], u))
    fi = Itemsets(from_label_sets([["i0"], ["i0", "i1"], ["i1"]], u))
    # supp(i0)=2 == supp(i0,i1) -> the pair is not a generator
    assert is_generator(fi, t) == [True, False, True]


def test_universal_item_is_not_a_generator():
    # the empty set is a strict subset with support m
    u = small_universe(2)
    t = Transactions(from_label_sets([["i1"], ["i0", "i1"]], u))
    fi = Itemsets(from_label_sets([["i1"]], u))
    assert is_generator(fi, t) == [False]


def brute_predicates(itemset_rows, tsets, n_items):
    """Definition-literal closed/maximal/generator over the full lattice."""
    def supp(z):
        zs = set(z)
        return sum(1 for t in tsets if zs <= t)

    all_sets = [frozenset(c) for k in range(n_items + 1)
                for c in combinations(range(n_items), k)]
    closed, maximal, generator = [], [], []
    present = [frozenset(r) for r in itemset_rows]
    for z in present:
        sz = supp(z)
        closed.append(not any(z < y and supp(y) == sz for y in all_sets))
        maximal.append(not any(z < y for y in present))
        generator.append(not any(y < z and supp(y) == sz for y in all_sets))
    return closed, maximal, generator


def test_predicates_match_bruteforce_oracle():
    rng = random.Random(515)
    for _ in range(12):
        n_items = rng.randint(3, 8)
        n_trans = rng.randint(2, 20)
        tsets = [{j for j in range(n_items) if rng.random() < 0.5}
                 for _ in range(n_trans)]
        info = ItemInfo.from_labels([f"i{k}" for k in range(n_items)])
        t = Transactions(ItemMatrix.from_rows([sorted(s) for s in tsets], info))
        fi = eclat(t, MiningParams(support=0.1, target="frequent-itemsets"))
        if len(fi) == 0:
            continue
        want = brute_predicates(fi.items.rows(), tsets, n_items)
        assert is_closed(fi, t) == want[0]
        assert is_maximal(fi) == want[1]
        assert is_generator(fi, t) == want[2]


def test_rule_predicates_use_the_union(zoo):
    r = Rules.from_label_sets([["hair"], ["hair", "milk"]],
                              [["milk"], ["backbone"]], zoo)
    # unions {hair,milk} and {hair,milk,backbone}: first is a strict subset
    assert is_maximal(r) == [False, True]


# -- significance -----------------------------------------------------------------------

def test_empty_lhs_rule_not_significant(zoo):
    r = Rules.from_label_sets([[]], [["tail"]], zoo)
    assert is_significant(r, zoo) == [False]


def test_perfect_cooccurrence_significance():
    # m=20, n_x=n_y=n_xy=10 -> p = 1/C(20,10), clearly below 0.01
    u = small_universe(2)
    rows = [["i0", "i1"]] * 10 + [[]] * 10
    t = Transactions(from_label_sets(rows, u))
    r = Rules.from_label_sets([["i0"]], [["i1"]], u)
    assert is_significant(r, t, alpha=0.01) == [True]
    from rulemine.measures import contingency_counts, fisher_exact_p
    p = fisher_exact_p(contingency_counts(r, t)[0])
    assert p == pytest.approx(1 / math.comb(20, 10), rel=1e-12)


def test_bonferroni_single_rule_equals_none(zoo):
    r = Rules.from_label_sets([["type=amphibian"]], [["aquatic"]], zoo)
    assert is_significant(r, zoo, 0.01, "none") == \
        is_significant(r, zoo, 0.01, "bonferroni")


def test_bonferroni_tightens_threshold():
    u = small_universe(4)
    rows = [["i0", "i1"]] * 4 + [["i2", "i3"]] * 4 + [[]] * 4
    t = Transactions(from_label_sets(rows, u))
    r = Rules.from_label_sets([["i0"], ["i2"]], [["i1"], ["i3"]], u)
    from rulemine.measures import contingency_counts, fisher_exact_p
    ps = [fisher_exact_p(cc) for cc in contingency_counts(r, t)]
    alpha = (ps[0] + 2 * ps[0]) / 2  # between p and 2p
    assert is_significant(r, t, alpha, "none") == [True, True]
    assert is_significant(r, t, alpha, "bonferroni") == [False, False]


def test_alpha_validation(zoo):
    r = Rules.from_label_sets([["hair"]], [["milk"]], zoo)
    with pytest.raises(ValueError):
        is_significant(r, zoo, alpha=0.0)
    with pytest.raises(ValueError):
        is_significant(r, zoo, alpha=1.0)
    with pytest.raises(ValueError):
        is_significant(r, zoo, adjustment="holm")


# -- labels, render, export ---------------------------------------------------------------

def test_rule_labels(zoo):
    r = Rules.from_label_sets([["hair", "milk", "predator"]], [["type=mammal"]],
                              zoo)
    assert r.lhs_labels() == ["{hair,milk,predator}"]
    assert r.rhs_labels() == ["{type=mammal}"]
    assert r.labels() == ["{hair,milk,predator} => {type=mammal}"]


def test_empty_itemset_label(zoo):
    r = Rules.from_label_sets([[]], [["tail"]], zoo)
    assert r.lhs_labels() == ["{}"]


def test_rhs_label_filter_reproduces_type_rules(zoo_rules_small):
    mask = ["type" in lab for lab in zoo_rules_small.rhs_labels()]
    picked = select(zoo_rules_small, mask)
    assert len(picked) == sum(mask)
    assert all("type=" in lab for lab in picked.rhs_labels())


def test_render_rows(zoo):
    r = Rules.from_label_sets([["fins"]], [["type=fish"]], zoo,
                              {"support": [0.13], "confidence": [0.76]})
    rows = render(r)
    assert rows[0]["LHS"] == "{fins}"
    assert rows[0]["RHS"] == "{type=fish}"
    assert list(rows[0].keys()) == ["LHS", "RHS", "support", "confidence"]


def test_csv_export_roundtrip_structure(zoo):
    r = Rules.from_label_sets(
        [["hair", "milk", "predator"], ["hair", "predator", "tail"], ["fins"]],
        [["type=mammal"], ["type=mammal"], ["type=fish"]], zoo,
        {"support": [0.2, 0.16, 0.13], "confidence": [1.0, 1.0, 0.76],
         "lift": [2.46, 2.46, 5.94]})
    rows = list(csv.reader(io.StringIO(export(r, "csv").decode())))
    assert rows[0] == ["LHS", "RHS", "support", "confidence", "lift"]
    assert len(rows) == 4
    assert rows[1][0] == "{hair,milk,predator}"


def test_export_empty_set(zoo):
    r = Rules.from_label_sets([], [], zoo, {"support": [], "confidence": []})
    rows = list(csv.reader(io.StringIO(export(r, "csv").decode())))
    assert len(rows) == 1  # header only
    assert export(r, "json").decode() == "[]"


def test_json_roundtrip_byte_identical(zoo):
    r = Rules.from_label_sets(
        [["fins"], []], [["type=fish"], ["tail"]], zoo,
        {"support": [0.13, 0.74], "confidence": [0.76, 0.74], "count": [13, 75]})
    blob = export(r, "json")
    again = rules_from_json(blob, zoo)
    assert export(again, "json") == blob


def test_itemsets_json_roundtrip(zoo):
    fi = apriori(zoo, MiningParams(support=0.6, target="frequent-itemsets"))
    blob = export(fi, "json")
    again = itemsets_from_json(blob, zoo)
    assert export(again, "json") == blob


def test_quality_alignment_through_select_sort_combine(zoo_rules_small):
    r = zoo_rules_small
    idx = [5, 1, 9]
    picked = select(r, idx)
    for col, vals in r.quality.items():
        assert picked.quality[col] == [vals[i] for i in idx]
    s = sort_by(r, "lift")
    order = sorted(range(len(r)), key=lambda i: r.quality["lift"][i], reverse=True)
    assert s.quality["support"] == [r.quality["support"][i] for i in order]
    both = combine([picked, picked])
    assert len(both) == 2 * len(picked)
    assert both.quality["lift"] == picked.quality["lift"] * 2


def test_unique_rules_by_lhs_rhs_pair(zoo):
    r = Rules.from_label_sets([["hair"], ["hair"], ["milk"]],
                              [["milk"], ["milk"], ["hair"]], zoo,
                              {"confidence": [0.9, 0.9, 0.8]})
    u = unique_rows(r)
    assert len(u) == 2
    assert u.quality["confidence"] == [0.9, 0.8]


def test_rules_disjointness_enforced(zoo):
    with pytest.raises(ValueError):
        Rules.from_label_sets([["hair"]], [["hair"]], zoo)


def test_combine_requires_matching_quality_columns(zoo):
    a = Rules.from_label_sets([["hair"]], [["milk"]], zoo, {"confidence": [1.0]})
    b = Rules.from_label_sets([["fins"]], [["type=fish"]], zoo, {"lift": [5.9]})
    with pytest.raises(ValueError):
        combine([a, b])
