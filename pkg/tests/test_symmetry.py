import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from symbreak.group import PermGroup
from symbreak.sums import parallel_multiple
from symbreak.symmetry import (Labeling, an_parallel_formula, check_set,
                               distinguishing_number, find_regular_set,
                               is_distinguishing, orbitals,
                               partition_stabilizer, regular_set_size_census)


def G(texts, degree):
    return PermGroup.from_cycles(texts, degree)


C3 = G(["(1,2,3)"], 3)
C4 = G(["(1,2,3,4)"], 4)
S3 = G(["(1,2)", "(1,2,3)"], 3)
S4 = G(["(1,2)", "(1,2,3,4)"], 4)
A4 = G(["(1,2,3)", "(1,2)(3,4)"], 4)
A5 = G(["(1,2,3)", "(3,4,5)"], 5)


def test_labeling_constructors():
    lab = Labeling.from_labels([1, 1, 2, 3])
    assert lab.degree == 4 and lab.k == 3
    assert lab.classes() == [[1, 2], [3], [4]]
    two = Labeling.from_set(5, [2, 4])
    assert two.k == 2 and two.labels == (2, 1, 2, 1, 2)
    with pytest.raises(ValueError):
        Labeling(3, (1, 2), 2)              # length mismatch
    with pytest.raises(ValueError):
        Labeling.from_labels([0, 1])
    with pytest.raises(ValueError):
        Labeling.from_set(3, [5])


def test_partition_stabilizer_oracle_random():
    rng = random.Random(19)
    for _ in range(25):
        H = oracles.random_subgroup(rng, 6)
        raw = [rng.randint(1, rng.choice((2, 3))) for _ in range(6)]
        uniq = sorted(set(raw))
        labels = [uniq.index(v) + 1 for v in raw]
        st_ = partition_stabilizer(H, Labeling.from_labels(labels))
        assert st_.order() == oracles.partition_stab_size(H, labels)


def test_is_distinguishing_examples():
    assert is_distinguishing(C3, Labeling.from_labels([1, 1, 2]))
    assert not is_distinguishing(S3, Labeling.from_labels([1, 1, 2]))
    assert is_distinguishing(S3, Labeling.from_labels([1, 2, 3]))
    assert is_distinguishing(A4, Labeling.from_labels([1, 1, 2, 3]))


def test_check_set_reports_witness():
    rep = check_set(S4, [1, 2])
    assert not rep.is_regular and rep.stabilizer_order == 4
    assert rep.witness is not None
    w = rep.witness
    assert {w(1), w(2)} == {1, 2} and not w.is_identity
    rep = check_set(C4, [1])
    assert rep.is_regular and rep.witness is None


def test_find_regular_set_examples():
    out = find_regular_set(C4)
    assert out.status == "found" and sorted(out.report.set) == [1]
    out = find_regular_set(S3)
    assert out.status == "none"
    out = find_regular_set(G([], 3))      # trivial group: empty set works
    assert out.status == "found" and sorted(out.report.set) == []


def test_find_regular_set_minimality_oracle():
    rng = random.Random(29)
    for _ in range(20):
        H = oracles.random_subgroup(rng, 6)
        out = find_regular_set(H)
        brute = oracles.regular_sets(H)
        if out.status == "found":
            got = sorted(out.report.set)
            assert frozenset(got) in brute
            key = lambda s: (len(s), sorted(s))
            assert key(got) == min(key(sorted(s)) for s in brute)
        else:
            assert out.status == "none" and not brute


def test_find_regular_set_sizes_filter():
    out = find_regular_set(C4, sizes=(2, 3))
    assert out.status == "found" and len(out.report.set) == 2
    out = find_regular_set(A5, sizes=(1, 1))
    assert out.status == "none"


def test_find_regular_set_randomized_mode():
    out = find_regular_set(C4, mode="randomized", seed=1)
    assert out.status in ("found", "inconclusive")
    if out.status == "found":
        assert check_set(C4, out.report.set).is_regular
    with pytest.raises(ValueError):
        find_regular_set(C4, mode="nonsense")


def test_census_matches_brute():
    H = parallel_multiple(A4, 2)
    census = regular_set_size_census(H, (0, 8))
    brute = oracles.regular_sets(H)
    by_size = {}
    for s in brute:
        by_size.setdefault(len(s), []).append(s)
    for size in range(0, 9):
        got = census[size]
        if got is None:
            assert size not in by_size
        else:
            assert frozenset(got) in by_size[size]


def test_distinguishing_number_brute_oracle():
    for H, want in ((C3, 2), (C4, 2), (S3, 3), (A4, 3), (S4, 4), (A5, 4)):
        rep = distinguishing_number(H)
        assert rep.status == "exact" and rep.value == want
        assert want == oracles.distinguishing_brute(H)
        assert is_distinguishing(H, rep.witness)
        assert rep.witness.k <= want


def test_distinguishing_trivial_group():
    rep = distinguishing_number(G([], 4))
    assert rep.status == "exact" and rep.value == 1


def test_distinguishing_random_oracle():
    rng = random.Random(37)
    for _ in range(10):
        H = oracles.random_subgroup(rng, 5)
        rep = distinguishing_number(H)
        assert rep.status == "exact"
        assert rep.value == oracles.distinguishing_brute(H)


def test_distinguishing_budget_inconclusive_is_bounded():
    m12 = G(["(1,4,12,6)(2,7,5,9,8,10,3,11)", "(1,12)(2,6,4,9,7,8,11,3)"], 12)
    rep = distinguishing_number(m12, budget=1000, seed=1)
    if rep.status == "exact":
        assert rep.value == 4
    else:
        assert rep.lower is not None and rep.lower >= 3
        assert rep.upper is None or rep.upper >= rep.lower


def test_parallel_copies_never_increase_distinguishing():
    rng = random.Random(43)
    for _ in range(8):
        H = oracles.random_subgroup(rng, 5)
        d1 = distinguishing_number(H).value
        d2 = distinguishing_number(parallel_multiple(H, 2)).value
        assert d2 <= d1


def test_an_parallel_formula_values():
    assert an_parallel_formula(3, 1) == 2
    assert an_parallel_formula(5, 1) == 4
    assert an_parallel_formula(6, 1) == 5
    assert an_parallel_formula(6, 2) == 3
    assert an_parallel_formula(6, 3) == 2
    assert an_parallel_formula(7, 2) == 3
    assert an_parallel_formula(26, 2) == 5
    assert an_parallel_formula(10, 4) == 2


def test_orbitals_counts():
    assert len(orbitals(A5)) == 1                      # 2-transitive
    assert len(orbitals(C4)) == 3
    assert len(orbitals(C4, ordered=False)) == 2
    obs = orbitals(parallel_multiple(C3, 2))
    total = sum(len(o) for o in obs)
    assert total == 6 * 5                              # partition of all pairs
    assert all(len(p) == 2 for o in obs for p in o)


def test_orbitals_are_orbits():
    rng = random.Random(47)
    H = oracles.random_subgroup(rng, 6)
    els = oracles.elements(H)
    for ob in orbitals(H):
        pair = next(iter(ob))
        expect = {(e(pair[0]), e(pair[1])) for e in els}
        assert set(map(tuple, ob)) == expect


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 7), st.data())
def test_regular_set_detection_property(degree, data):
    gens = data.draw(st.lists(st.permutations(list(range(1, degree + 1))),
                              min_size=1, max_size=2))
    from symbreak.perm import Permutation
    H = PermGroup([Permutation.from_images(list(g)) for g in gens], degree)
    pts = data.draw(st.sets(st.integers(1, degree)))
    rep = check_set(H, pts)
    assert rep.is_regular == (oracles.setwise_stab_size(H, pts) == 1)
