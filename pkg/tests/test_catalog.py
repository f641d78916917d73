"""Registry, construction, identification, prediction, and claim checks."""

import pytest

from symbreak.catalog import (
    SUITES,
    build_named,
    entry,
    identify,
    list_exceptional,
    load_catalog,
    predict_D,
    verify_entry,
    verify_suite,
)
from symbreak.group import PermGroup
from symbreak.sums import direct_sum, parallel_multiple


def test_catalog_shape():
    cat = load_catalog()
    assert len(cat) == 26
    ids = [e.id for e in cat]
    assert len(set(ids)) == 26
    by_kind = {}
    for e in cat:
        by_kind.setdefault(e.kind, []).append(e)
        assert e.suite in SUITES
        assert e.order > 1 and e.degree > 1
        assert e.generators
    assert len(by_kind["base"]) == 14
    assert len(by_kind["lockstep"]) == 7
    assert len(by_kind["cross"]) == 5


def test_entry_lookup_and_aliases():
    assert entry("M11") is entry("M11@11")
    assert entry("M11(12)").id == "M11@12"
    assert entry("A8@15").id == "L4(2)@15"
    assert entry("A6@10").id == "L2(9)@10"
    with pytest.raises(KeyError):
        entry("PSp(4,3)")


def test_exceptional_list():
    base = list_exceptional()
    assert len(base) == 14
    assert all(e.kind == "base" for e in base)
    assert [e.order for e in base] == [
        60, 168, 168, 504, 360, 660, 7920, 7920,
        95040, 5616, 20160, 443520, 10200960, 244823040,
    ]


def test_entries_build_to_stored_order():
    for key in ("L2(5)@6", "L3(2)||psi", "L2(7)||L3(2)"):
        e = entry(key)
        G = e.build()
        assert G.degree == e.degree
        assert G.order() == e.order


def test_build_named_canonical():
    assert build_named("S5").order() == 120
    assert build_named("A5").order() == 60
    assert build_named("C7").order() == 7
    assert build_named("A3").order() == 3
    assert build_named("A2").order() == 1
    assert build_named("S1").order() == 1


def test_build_named_multiples_and_ids():
    H = build_named("A5^(2)")
    assert H.degree == 10 and H.order() == 60
    assert len(H.orbits()) == 2
    K = build_named("C4^(3)")
    assert K.degree == 12 and K.order() == 4
    M = build_named("M11^(2)")
    assert M.degree == 22 and M.order() == 7920
    assert build_named("L2(5)").order() == 60


def test_build_named_rejects_unknown():
    for bad in ("Q8", "A0", "A5^(0)", "foo", "A999"):
        with pytest.raises(KeyError):
            build_named(bad)


def test_identify_known_actions():
    assert identify(build_named("A7")) == "A7"
    assert identify(build_named("S6")) == "S6"
    assert identify(entry("L2(5)@6").build()) == "L2(5)@6"
    assert identify(entry("M12@12").build()) == "M12@12"
    assert identify(entry("M11@12").build()) == "M11@12"
    assert identify(build_named("C6")) is None
    with pytest.raises(ValueError):
        identify(build_named("A5^(2)"))


def test_predict_formula_cases():
    p = predict_D(build_named("A5"))
    assert (p.value, p.rule) == (4, "alternating-parallel-formula")
    assert predict_D(build_named("A7^(2)")).value == 3
    assert predict_D(build_named("A7^(3)")).value == 2
    assert predict_D(build_named("A6^(2)")).value == 3


def test_predict_exceptional_cases():
    p = predict_D(entry("M12@12").build())
    assert (p.value, p.rule) == (4, "exceptional-distinguishing-4")
    p = predict_D(entry("A6||psi").build())
    assert (p.value, p.rule) == (3, "exceptional-distinguishing-3")
    assert predict_D(entry("A6^(2)||psi").build()).value == 2
    p = predict_D(build_named("M11^(2)"))
    assert (p.value, p.rule) == (2, "regular-set-default")
    assert predict_D(entry("L2(9)||A6").build()).value == 2


def test_predict_out_of_scope():
    for desig in ("S5", "A4", "C6"):
        with pytest.raises(ValueError):
            predict_D(build_named(desig))
    with pytest.raises(ValueError):
        predict_D(PermGroup([], 3))
    # fixed points must be stripped first
    padded = direct_sum(build_named("A5"), PermGroup([], 2))
    with pytest.raises(ValueError):
        predict_D(padded)


def test_verify_quick_sum_entries_pass():
    for suite in ("table1b", "table2", "lemma33"):
        for rep in verify_suite(suite, effort="quick"):
            assert rep.status == "pass", (rep.entry_id, rep.checks)


def test_verify_full_small_base_entry():
    rep = verify_entry("L2(5)@6", "full")
    assert rep.status == "pass"
    names = {c.name for c in rep.checks}
    assert {"order", "transitive", "primitive",
            "regular-set-in-double", "no-regular-set"} <= names


def test_verify_full_claim_only_entry():
    # beyond the exhaustive sweep policy: claims echoed, nothing failed
    rep = verify_entry("M22@22", "full")
    assert rep.status == "inconclusive"
    assert not [c for c in rep.checks if c.status == "fail"]
    claimed = [c.name for c in rep.checks if c.status == "inconclusive"]
    assert "no-regular-set" in claimed


def test_verify_entry_rejects_bad_args():
    with pytest.raises(KeyError):
        verify_entry("nope")
    with pytest.raises(ValueError):
        verify_entry("L2(5)@6", "medium")
    with pytest.raises(KeyError):
        verify_suite("table3")


def test_lockstep_multiple_is_intransitive_with_matching_blocks():
    e = entry("A6^(2)||psi")
    G = e.build()
    assert sorted(len(o) for o in G.orbits()) == sorted(e.blocks)
    H = parallel_multiple(entry("L2(5)@6").build(), 2)
    assert H.order() == 60
