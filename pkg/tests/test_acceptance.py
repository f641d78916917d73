"""End-to-end acceptance runs, one test and one printed verdict per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the verdict lines.
Every computation here re-derives its target from generators; stored catalog
values only ever serve as the expectation being checked.
"""
import random
import time

import oracles
from symbreak.catalog import (
    build_named,
    entry,
    list_exceptional,
    load_catalog,
    verify_suite,
)
from symbreak.group import PermGroup, setwise_stabilizer
from symbreak.sums import IsoSpec, decompose, parallel_sum
from symbreak.symmetry import (
    Labeling,
    an_parallel_formula,
    distinguishing_number,
    find_regular_set,
    is_distinguishing,
    orbitals,
    partition_stabilizer,
    regular_set_size_census,
)

TABLE1_ORDERS = [60, 168, 168, 504, 360, 660, 7920, 7920,
                 95040, 5616, 20160, 443520, 10200960, 244823040]


def _verdict(num: int, ok: bool, msg: str):
    print(f"\nACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {msg}", flush=True)
    assert ok, f"criterion {num}: {msg}"


def test_criterion_1_exceptional_actions_and_their_doubles():
    t0 = time.perf_counter()
    reports = verify_suite("table1", effort="quick")
    elapsed = time.perf_counter() - t0
    ok = [e.order for e in list_exceptional()] == TABLE1_ORDERS
    ok = ok and len(reports) == 14
    ok = ok and all(r.status == "pass" for r in reports)
    for r in reports:
        names = {c.name: c.status for c in r.checks}
        ok = ok and names.get("regular-set-in-double") == "pass"
    ok = ok and elapsed < 300
    _verdict(1, ok, "14 rows, orders match, each stored set is regular in "
                    f"the doubled action (M24 via backtrack), {elapsed:.1f}s")


def test_criterion_2_lockstep_pairs_with_nonpermutation_pairing():
    t0 = time.perf_counter()
    reports = verify_suite("table1b", effort="quick")
    elapsed = time.perf_counter() - t0
    ok = len(reports) == 5 and all(r.status == "pass" for r in reports)
    for r in reports:
        names = {c.name: c.status for c in r.checks}
        for want in ("order", "kernels-trivial", "block-pairing-isomorphism",
                     "pairing-not-by-relabeling"):
            ok = ok and names.get(want) == "pass"
        ok = ok and ("regular-set-in-sum" in names
                     or "regular-set-size-census" in names)
    ok = ok and elapsed < 300
    _verdict(2, ok, "5 pairs: trivial kernels, order preserved, pairing not "
                    f"induced by any relabeling, sets regular, {elapsed:.1f}s")


def test_criterion_3_cross_pairs():
    t0 = time.perf_counter()
    reports = verify_suite("table2", effort="quick")
    elapsed = time.perf_counter() - t0
    ok = len(reports) == 5 and all(r.status == "pass" for r in reports)
    ids = {r.entry_id for r in reports}
    ok = ok and "L2(7)||L3(2)" in ids
    ok = ok and bool(entry("L2(7)||L3(2)").repairs)
    for r in reports:
        names = {c.name: c.status for c in r.checks}
        ok = ok and names.get("regular-set-in-sum") == "pass"
    ok = ok and elapsed < 300
    _verdict(3, ok, "5 cross pairs verified, including the repaired "
                    f"L2(7)||L3(2) row, {elapsed:.1f}s")


def test_criterion_4_parallel_multiple_formula():
    t0 = time.perf_counter()
    reports = verify_suite("lemma32", effort="full")
    elapsed = time.perf_counter() - t0
    ok = len(reports) == 15 and all(r.status == "pass" for r in reports)
    ids = {r.entry_id for r in reports}
    ok = ok and ids == {f"A{n}^({k})" for n in range(3, 8) for k in range(1, 4)}
    # spot-check the closed form itself on the same grid
    for n in range(3, 8):
        for k in range(1, 4):
            d = an_parallel_formula(n, k)
            ok = ok and d ** k >= n - 1 and (d == 1 or (d - 1) ** k < n - 1)
    ok = ok and elapsed < 600
    _verdict(4, ok, "computed distinguishing numbers match the formula for "
                    f"n=3..7, k=1..3 ({len(reports)} cases), {elapsed:.1f}s")


def test_criterion_5_outer_lockstep_pair_and_its_double():
    G = entry("A6||psi").build()
    sweep = find_regular_set(G)          # exhaustive over all 2^12 subsets
    ok = sweep.status == "none"
    res = distinguishing_number(G)
    ok = ok and res.status == "exact" and res.value == 3
    ok = ok and res.witness is not None and is_distinguishing(G, res.witness)

    H = entry("A6^(2)||psi").build()
    census = regular_set_size_census(H, (4, 14))
    ok = ok and census is not None
    for size in range(4, 15):
        pts = census.get(size) if census else None
        ok = ok and pts is not None
        if pts:
            ok = ok and len(pts) == size
            ok = ok and setwise_stabilizer(H, pts).order() == 1
    _verdict(5, ok, "A6||psi has no regular set yet a distinguishing "
                    "3-labeling; its doubled arrangement has regular sets "
                    "in every size 4..14")


def test_criterion_6_distinguishing_numbers_of_the_base_actions():
    budget = 150_000     # covers every canonical 3-labeling through degree 12
    t0 = time.perf_counter()
    ok = True
    got = {}
    for key, want in (("L3(2)@7", 4), ("M11@11", 4)):
        res = distinguishing_number(entry(key).build(), budget=budget)
        got[key] = (res.status, res.value)
        ok = ok and res.status == "exact" and res.value == want
    for key in ("L2(5)@6", "L2(7)@8", "L2(8)@9", "L2(9)@10",
                "L2(11)@11", "M11@12", "L3(3)@13", "L4(2)@15"):
        res = distinguishing_number(entry(key).build(), budget=budget)
        got[key] = (res.status, res.value)
        ok = ok and res.status == "exact" and res.value == 3

    # the declared budget covers all 88574 canonical 3-labelings of M12,
    # so the run lands exact; an inconclusive report with consistent
    # bounds would also be admissible
    res = distinguishing_number(entry("M12@12").build(), budget=budget)
    got["M12@12"] = (res.status, res.value)
    if res.status == "exact":
        ok = ok and res.value == 4
    else:
        ok = ok and res.lower <= 4 and (res.upper is None or res.upper >= 4)

    # beyond the sweep policy the lower bounds stay claims, but the stored
    # 3-labelings still pin the upper bound
    for key in ("M22@22", "M23@23", "M24@24"):
        e = entry(key)
        lab = Labeling.from_labels(e.distinguishing_labeling)
        ok = ok and lab.k == 3 and is_distinguishing(e.build(), lab)
        got[key] = ("upper", lab.k)
    elapsed = time.perf_counter() - t0
    _verdict(6, ok, f"exact values {got['L3(2)@7'][1]}/{got['M11@11'][1]} for "
                    "the two D=4 rows, 3 for the eight D=3 rows, M12 "
                    f"{got['M12@12'][0]}={got['M12@12'][1]}, stored "
                    f"3-labelings verified for M22/M23/M24, {elapsed:.1f}s")


def test_criterion_7_orbital_counts_and_partitions():
    ok = len(orbitals(entry("A6||psi").build(), ordered=False)) == 3
    ok = ok and len(orbitals(build_named("A6^(2)"), ordered=False)) == 4

    def canon(obs):
        return {frozenset(ob) for ob in obs}

    for n in (5, 6, 7):
        for k in (2, 3):
            A = build_named(f"A{n}^({k})")
            S = build_named(f"S{n}^({k})")
            ok = ok and canon(orbitals(A)) == canon(orbitals(S))
            ok = ok and (canon(orbitals(A, ordered=False))
                         == canon(orbitals(S, ordered=False)))
    _verdict(7, ok, "unordered orbital counts 3 (A6||psi) and 4 (A6^(2)); "
                    "alternating and symmetric lockstep multiples share "
                    "orbital partitions for n=5..7, k=2,3")


def test_criterion_8_property_suites():
    t0 = time.perf_counter()
    ok = True

    # round trip: split along the first orbit, rebuild, compare
    rng = random.Random(2024)
    trips = 0
    while trips < 50:
        H = oracles.random_intransitive(rng, 8)
        first = sorted(H.orbits()[0])
        rest = sorted(set(range(1, 9)) - set(first))
        dec = decompose(H, (first, rest))
        ok = ok and dec.rebuild().same_group(H)
        trips += 1

    # every catalogued intransitive arrangement has trivial block kernels
    for e in load_catalog():
        if e.kind == "base":
            continue
        G = e.build()
        off = 0
        for b in e.blocks:
            part = list(range(off + 1, off + b + 1))
            comp = sorted(set(range(1, e.degree + 1)) - set(part))
            dec = decompose(G, (part, comp))
            ok = ok and dec.kernels[0].order() == 1
            off += b

    # a lockstep pair is never harder to distinguish than its blocks
    rng = random.Random(77)
    checked = 0
    while checked < 30:
        H = oracles.random_subgroup(rng, 5)
        if H.order() == 1:
            continue
        t = oracles.random_perm(rng, 5)
        ti = t.inverse()
        pairs = [(g, ti * g * t) for g in H.generators]
        target = PermGroup([b for _, b in pairs], 5)
        sum_ = parallel_sum(IsoSpec(H, target, pairs))
        res_h = distinguishing_number(H)
        res_s = distinguishing_number(sum_)
        ok = ok and res_h.status == "exact" and res_s.status == "exact"
        ok = ok and res_s.value <= res_h.value
        checked += 1

    # backtrack stabilizers agree with filtering over the full element list
    carved = 0
    for e in load_catalog():
        if e.order > 100_000:
            continue
        G = e.build()
        els = oracles.elements(G)
        ok = ok and len(els) == e.order
        pts = (e.regular_set if e.regular_set and e.regular_set_in == "self"
               else tuple(range(1, G.degree // 2 + 1)))
        s = frozenset(pts)
        brute_set = sum(1 for el in els if frozenset(el(x) for x in s) == s)
        ok = ok and setwise_stabilizer(G, pts).order() == brute_set
        labels = (e.distinguishing_labeling
                  or tuple(i % 3 + 1 for i in range(G.degree)))
        brute_part = sum(
            1 for el in els
            if all(labels[el(x) - 1] == labels[x - 1]
                   for x in range(1, G.degree + 1)))
        stab = partition_stabilizer(G, Labeling.from_labels(labels))
        ok = ok and stab.order() == brute_part
        carved += 1
    rng = random.Random(5)
    for _ in range(5):
        G = oracles.random_subgroup(rng, 8)
        pts = tuple(sorted(rng.sample(range(1, 9), 3)))
        ok = ok and (setwise_stabilizer(G, pts).order()
                     == oracles.setwise_stab_size(G, pts))
        labels = tuple(rng.randint(1, 3) for _ in range(8))
        ok = ok and (partition_stabilizer(G, Labeling.from_labels(labels, 3)).order()
                     == oracles.partition_stab_size(G, labels))
        carved += 1

    elapsed = time.perf_counter() - t0
    _verdict(8, ok, "50 decompose/rebuild round trips, trivial kernels on "
                    "all 12 catalogued arrangements, 30 lockstep "
                    "distinguishing bounds, stabilizer searches match "
                    f"filtering on {carved} groups, {elapsed:.1f}s")
