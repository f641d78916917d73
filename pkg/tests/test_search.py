import random

import oracles
from symbreak.group import PermGroup
from symbreak.perm import Permutation
from symbreak.search import (class_stabilizer, find_class_preserver,
                             find_conjugator, find_set_preserver,
                             setwise_stabilizer)


def G(texts, degree):
    return PermGroup.from_cycles(texts, degree)


def test_setwise_stabilizer_known():
    s5 = G(["(1,2)", "(1,2,3,4,5)"], 5)
    st = setwise_stabilizer(s5, [1, 2])
    assert st.order() == 12          # S2 x S3
    for g in st.generators:
        assert {g(1), g(2)} == {1, 2}


def test_setwise_stabilizer_oracle():
    rng = random.Random(23)
    for _ in range(25):
        degree = rng.randint(4, 7)
        H = oracles.random_subgroup(rng, degree)
        k = rng.randint(1, degree - 1)
        s = rng.sample(range(1, degree + 1), k)
        st = setwise_stabilizer(H, s)
        assert st.is_subgroup_of(H)
        assert st.order() == oracles.setwise_stab_size(H, s)


def test_setwise_whole_domain_and_empty():
    H = G(["(1,2,3)", "(3,4,5)"], 5)
    assert setwise_stabilizer(H, []).same_group(H)
    assert setwise_stabilizer(H, range(1, 6)).same_group(H)


def test_find_set_preserver_matches_stabilizer():
    rng = random.Random(5)
    for _ in range(25):
        H = oracles.random_subgroup(rng, 6)
        s = rng.sample(range(1, 7), rng.randint(1, 5))
        raw = find_set_preserver(H, s)
        brute = oracles.setwise_stab_size(H, s)
        if brute > 1:
            assert raw is not None
            p = Permutation(raw)
            assert not p.is_identity and p in H
            assert frozenset(p(x) for x in s) == frozenset(s)
        else:
            assert raw is None


def test_class_stabilizer_oracle():
    rng = random.Random(31)
    for _ in range(20):
        H = oracles.random_subgroup(rng, 6)
        labels = [rng.randint(1, 3) for _ in range(6)]
        class_of = {x: labels[x - 1] for x in range(1, 7)}
        st = class_stabilizer(H, class_of)
        assert st.order() == oracles.partition_stab_size(H, labels)


def test_find_class_preserver_consistent():
    H = G(["(1,2,3,4,5,6)"], 6)
    class_of = {1: 1, 2: 2, 3: 1, 4: 2, 5: 1, 6: 2}
    raw = find_class_preserver(H, class_of)
    assert raw is not None           # rotation by 2 preserves the classes
    p = Permutation(raw)
    assert all(class_of[p(x)] == class_of[x] for x in range(1, 7))


def test_find_conjugator_recovers_relabeling():
    rng = random.Random(17)
    base = G(["(1,2,3)", "(3,4,5,6)"], 6)
    for _ in range(15):
        t = oracles.random_perm(rng, 6)
        pairs = [(g, t.inverse() * g * t) for g in base.generators]
        raw = find_conjugator([(a.images, b.images) for a, b in pairs], 6)
        assert raw is not None
        c = Permutation(raw)
        for a, b in pairs:
            assert c.inverse() * a * c == b


def test_find_conjugator_rejects_type_mismatch():
    a = Permutation.from_cycles("(1,2,3)", 5)
    b = Permutation.from_cycles("(1,2)", 5)
    assert find_conjugator([(a.images, b.images)], 5) is None


def test_find_conjugator_agrees_with_brute_search():
    import itertools
    rng = random.Random(41)
    for _ in range(20):
        pairs = [(oracles.random_perm(rng, 4), oracles.random_perm(rng, 4))
                 for _ in range(2)]
        got = find_conjugator([(a.images, b.images) for a, b in pairs], 4)
        brute = None
        for imgs in itertools.permutations(range(1, 5)):
            c = Permutation.from_images(list(imgs))
            if all(c.inverse() * a * c == b for a, b in pairs):
                brute = c
                break
        assert (got is not None) == (brute is not None)
        if got is not None:
            c = Permutation(got)
            assert all(c.inverse() * a * c == b for a, b in pairs)
