"""Combining permutation groups that act on disjoint point blocks.

Provides direct sums, subdirect sums, parallel sums and parallel
multiples, plus the inverse operation: decomposing an intransitive
group into constituents, kernels and the pairing between them.

Blocks are laid out consecutively: a sum of groups of degrees
n1, n2, ... acts on {1..n1} + {n1+1..n1+n2} + ...  Every constructor
asserts the order law it promises (|G|*|H| for direct sums,
|G1|*|H2| for subdirect sums, |source| for parallel sums), so a
malformed pairing fails loudly instead of building the wrong group.
"""

from dataclasses import dataclass, field

from .perm import Permutation
from .group import PermGroup
from .search import find_conjugator

__all__ = [
    "IsoSpec",
    "SubdirectSpec",
    "Decomposition",
    "direct_sum",
    "parallel_sum",
    "subdirect_sum",
    "parallel_multiple",
    "decompose",
    "strip_fixed_points",
    "validate_isomorphism",
    "is_permutation_automorphism",
    "permutation_realizer",
]


def _embed(perm: Permutation, offset: int, total: int) -> Permutation:
    """Embed a permutation into degree `total`, its block starting at offset+1."""
    img = list(range(total + 1))
    for x in range(1, perm.degree + 1):
        img[offset + x] = offset + perm(x)
    return Permutation(tuple(img))


def _combine(parts, offsets, total) -> Permutation:
    img = list(range(total + 1))
    for perm, off in zip(parts, offsets):
        for x in range(1, perm.degree + 1):
            img[off + x] = off + perm(x)
    return Permutation(tuple(img))


@dataclass
class IsoSpec:
    """A claimed isomorphism source -> target, given on generators.

    image_pairs lists (g, h) with g a generator of source (in source's
    local domain) and h its claimed image in target's local domain.
    """

    source: PermGroup
    target: PermGroup
    image_pairs: list = field(default_factory=list)

    @classmethod
    def identity(cls, group: PermGroup) -> "IsoSpec":
        return cls(group, group, [(g, g) for g in group.generators])

    @classmethod
    def from_cycles(cls, source: PermGroup, target: PermGroup, pair_texts) -> "IsoSpec":
        pairs = [
            (Permutation.from_cycles(a, source.degree),
             Permutation.from_cycles(b, target.degree))
            for a, b in pair_texts
        ]
        return cls(source, target, pairs)


@dataclass
class SubdirectSpec:
    """Data for G1[H1] (+)_phi G2[H2].

    representative_pairs lists element pairs (r, s), r in G1 and s in
    G2, realizing the quotient correspondence phi(H1*r) = H2*s.  The
    first components together with H1 must generate G1 (a transversal
    of H1 in G1 works, and so does any generating set).
    """

    g1: PermGroup
    h1: PermGroup
    g2: PermGroup
    h2: PermGroup
    representative_pairs: list = field(default_factory=list)

    def check(self) -> None:
        """Raise ValueError on the first violated structural invariant."""
        for sub, sup, tag in ((self.h1, self.g1, "first"), (self.h2, self.g2, "second")):
            if not sub.is_subgroup_of(sup):
                raise ValueError(f"kernel of {tag} block is not a subgroup")
            # normality: conjugates of kernel generators stay in the kernel
            for g in sup.generators:
                gi = g.inverse()
                for h in sub.generators:
                    if (gi * h * g) not in sub:
                        raise ValueError(f"kernel of {tag} block is not normal")
        if self.g1.order() * self.h2.order() != self.g2.order() * self.h1.order():
            raise ValueError("quotient sizes differ; no correspondence possible")
        for r, s in self.representative_pairs:
            if r not in self.g1 or s not in self.g2:
                raise ValueError("representative pair outside its group")


@dataclass
class Decomposition:
    """Result of splitting an intransitive group over two blocks."""

    block_split: tuple       # (sorted tuple of points, sorted tuple of points)
    constituents: tuple      # (G1, G2) in local coordinates
    kernels: tuple           # (H1, H2) in local coordinates
    iso_pairs: list          # element pairs realizing the quotient pairing

    def spec(self) -> SubdirectSpec:
        return SubdirectSpec(self.constituents[0], self.kernels[0],
                             self.constituents[1], self.kernels[1],
                             self.representative_pairs())

    def representative_pairs(self) -> list:
        return list(self.iso_pairs)

    def rebuild(self) -> PermGroup:
        """Reassemble the subdirect sum; equals the decomposed group.

        subdirect_sum works on consecutive blocks, so when the split is
        not contiguous the result is carried back to the original points.
        """
        out = subdirect_sum(self.spec())
        order = list(self.block_split[0]) + list(self.block_split[1])
        if order == sorted(order):
            return out
        carry = Permutation.from_images(order)
        back = carry.inverse()
        gens = [back * g * carry for g in out.generators]
        return PermGroup(gens, out.degree)


def direct_sum(*groups: PermGroup) -> PermGroup:
    """Groups acting independently on consecutive disjoint blocks."""
    if len(groups) < 2:
        raise ValueError("direct_sum needs at least two groups")
    total = sum(g.degree for g in groups)
    gens = []
    off = 0
    expected = 1
    for g in groups:
        gens.extend(_embed(p, off, total) for p in g.generators)
        off += g.degree
        expected *= g.order()
    out = PermGroup(gens, total)
    assert out.order() == expected
    return out


def validate_isomorphism(iso: IsoSpec) -> bool:
    """True iff the generator pairing extends to an isomorphism.

    Decided in the direct sum: K = <(g_i, h_i)> has order |source| iff
    the pairing is the graph of an isomorphism onto <h_i>; surjectivity
    then reduces to <h_i> = target.
    """
    src, tgt = iso.source, iso.target
    if src.order() != tgt.order():
        return False
    firsts = [a for a, _ in iso.image_pairs]
    seconds = [b for _, b in iso.image_pairs]
    if not firsts:
        return src.order() == 1
    if not (PermGroup(firsts, src.degree).same_group(src)
            and PermGroup(seconds, tgt.degree).same_group(tgt)):
        return False
    total = src.degree + tgt.degree
    paired = [_combine((a, b), (0, src.degree), total) for a, b in iso.image_pairs]
    return PermGroup(paired, total).order() == src.order()


def parallel_sum(iso: IsoSpec) -> PermGroup:
    """H ||_phi K: source and target act in lockstep through phi."""
    if not validate_isomorphism(iso):
        raise ValueError("image pairs do not define an isomorphism")
    total = iso.source.degree + iso.target.degree
    gens = [_combine((a, b), (0, iso.source.degree), total)
            for a, b in iso.image_pairs]
    out = PermGroup(gens, total)
    assert out.order() == iso.source.order()
    return out


def subdirect_sum(spec: SubdirectSpec) -> PermGroup:
    """G1[H1] (+)_phi G2[H2] on deg(G1)+deg(G2) points."""
    spec.check()
    n1, n2 = spec.g1.degree, spec.g2.degree
    total = n1 + n2
    gens = [_embed(h, 0, total) for h in spec.h1.generators]
    gens += [_embed(k, n1, total) for k in spec.h2.generators]
    gens += [_combine((r, s), (0, n1), total) for r, s in spec.representative_pairs]
    out = PermGroup(gens, total)
    expected = spec.g1.order() * spec.h2.order()
    if out.order() != expected:
        raise ValueError(
            f"inconsistent pairing: built order {out.order()}, expected {expected}")
    # elements trivial on one block must be exactly the other side's kernel,
    # otherwise the pairing does not realize a quotient correspondence
    if out.pointwise_stabilizer(range(n1 + 1, total + 1)).order() != spec.h1.order():
        raise ValueError("inconsistent pairing: first-block kernel mismatch")
    if out.pointwise_stabilizer(range(1, n1 + 1)).order() != spec.h2.order():
        raise ValueError("inconsistent pairing: second-block kernel mismatch")
    return out


def parallel_multiple(group: PermGroup, r: int) -> PermGroup:
    """G^(r): the same action replayed on r disjoint copies of the domain."""
    if r < 1:
        raise ValueError("multiplicity must be >= 1")
    n = group.degree
    total = n * r
    offsets = tuple(n * i for i in range(r))
    gens = [_combine((g,) * r, offsets, total) for g in group.generators]
    out = PermGroup(gens, total)
    assert out.order() == group.order()
    return out


def _restrict(perm: Permutation, points, index) -> Permutation:
    img = [0] * (len(points) + 1)
    for local, x in enumerate(points, start=1):
        img[local] = index[perm(x)]
    return Permutation(tuple(img))


def decompose(group: PermGroup, split) -> Decomposition:
    """Split an intransitive group over (X1, X2) into subdirect-sum data.

    Each part of the split must be a union of orbits.  Constituents and
    kernels come out in local coordinates (points relabeled 1.. in
    ascending order); iso_pairs holds the generator restrictions, which
    generate the quotient correspondence.
    """
    x1 = tuple(sorted(split[0]))
    x2 = tuple(sorted(split[1]))
    if sorted(x1 + x2) != list(range(1, group.degree + 1)):
        raise ValueError("split is not a partition of the domain")
    s1 = set(x1)
    for orb in group.orbits():
        if not (orb <= s1 or orb.isdisjoint(s1)):
            raise ValueError("split parts must be unions of orbits")
    idx1 = {x: i for i, x in enumerate(x1, start=1)}
    idx2 = {x: i for i, x in enumerate(x2, start=1)}

    g1 = PermGroup([_restrict(g, x1, idx1) for g in group.generators], len(x1))
    g2 = PermGroup([_restrict(g, x2, idx2) for g in group.generators], len(x2))
    # kernel on one block = pointwise stabilizer of the other, restricted
    k1 = group.pointwise_stabilizer(x2)
    k2 = group.pointwise_stabilizer(x1)
    h1 = PermGroup([_restrict(g, x1, idx1) for g in k1.generators], len(x1))
    h2 = PermGroup([_restrict(g, x2, idx2) for g in k2.generators], len(x2))
    pairs = [(_restrict(g, x1, idx1), _restrict(g, x2, idx2))
             for g in group.generators]
    return Decomposition((x1, x2), (g1, g2), (h1, h2), pairs)


def strip_fixed_points(group: PermGroup):
    """Drop globally fixed points; returns (restricted group, stripped count).

    The restriction keeps the moved points in ascending order, relabeled
    to 1..m.  Faithful, so the order is unchanged.
    """
    moved = sorted(group.moved_points())
    stripped = group.degree - len(moved)
    if stripped == 0:
        return group, 0
    index = {x: i for i, x in enumerate(moved, start=1)}
    gens = [_restrict(g, moved, index) for g in group.generators]
    return PermGroup(gens, len(moved)), stripped


def permutation_realizer(iso: IsoSpec):
    """A permutation c of the domain with g^c = phi(g) for all pairs, or None.

    c ranges over the full symmetric group, not just over the group
    itself; existence makes phi a permutation automorphism.
    """
    if iso.source.degree != iso.target.degree:
        raise ValueError("realizer needs source and target on one domain")
    pairs = [(a.images, b.images) for a, b in iso.image_pairs]
    raw = find_conjugator(pairs, iso.source.degree)
    return None if raw is None else Permutation(raw)


def is_permutation_automorphism(iso: IsoSpec) -> bool:
    if not validate_isomorphism(iso):
        raise ValueError("image pairs do not define an isomorphism")
    return permutation_realizer(iso) is not None
