"""Permutation groups backed by deterministic stabilizer chains.

The chain is built by the incremental Schreier-Sims procedure.  Base points
default to the smallest moved point at each level; a preferred base prefix
(for example the points of a set whose stabilizer is wanted) can be supplied
and is honoured eagerly, so levels whose base point lies in the prefix always
come first.  Raw permutations are the image tuples of :class:`Permutation`
(slot 0 is a sentinel), which keeps hot loops free of object overhead.
"""

from __future__ import annotations

from .perm import Permutation

__all__ = [
    "PermGroup",
    "StabilizerChain",
    "BudgetExceededError",
    "build_chain",
    "order",
    "contains",
    "orbits",
    "fixed_points",
    "pointwise_stabilizer",
    "setwise_stabilizer",
    "enumerate_elements",
    "is_transitive",
    "is_primitive",
]

DEFAULT_ELEMENT_BUDGET = 10_000_000


class BudgetExceededError(RuntimeError):
    """An enumeration or search would exceed its declared budget."""


def _mul(a, b):
    # x^(a*b) = (x^a)^b; sentinel slot maps 0 -> b[0] = 0.
    return tuple(b[v] for v in a)


def _inv(a):
    inv = [0] * len(a)
    for x in range(1, len(a)):
        inv[a[x]] = x
    return tuple(inv)


def _identity(degree):
    return tuple(range(degree + 1))


class _Level:
    __slots__ = ("point", "gens", "transversal", "sorted_orbit")

    def __init__(self, point, degree):
        self.point = point
        self.gens = []
        self.transversal = {point: _identity(degree)}
        self.sorted_orbit = [point]

    def recompute(self, degree):
        """Deterministic BFS orbit of the base point under this level's gens."""
        trans = {self.point: _identity(degree)}
        queue = [self.point]
        while queue:
            p = queue.pop(0)
            up = trans[p]
            for g in self.gens:
                q = g[p]
                if q not in trans:
                    trans[q] = _mul(up, g)
                    queue.append(q)
        self.transversal = trans
        self.sorted_orbit = sorted(trans)


class StabilizerChain:
    """Base, strong generators and transversals for a permutation group."""

    __slots__ = ("degree", "levels")

    def __init__(self, degree, levels):
        self.degree = degree
        self.levels = levels

    @property
    def base(self):
        return tuple(lvl.point for lvl in self.levels)

    def order(self) -> int:
        n = 1
        for lvl in self.levels:
            n *= len(lvl.transversal)
        return n

    def sift(self, raw, start=0):
        """Strip a raw permutation; returns (residue, level reached).

        The residue is the identity iff the element lies in the group (for
        start=0).  Otherwise the level index tells where sifting failed."""
        h = raw
        for j in range(start, len(self.levels)):
            lvl = self.levels[j]
            beta = h[lvl.point]
            if beta == lvl.point:
                continue
            u = lvl.transversal.get(beta)
            if u is None:
                return h, j
            h = _mul(h, _inv(u))
        return h, len(self.levels)

    def strong_generators(self):
        seen = set()
        out = []
        for lvl in self.levels:
            for g in lvl.gens:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out


def _build_chain(gens_raw, degree, preferred=()):
    identity = _identity(degree)
    moved = set()
    for g in gens_raw:
        for x in range(1, degree + 1):
            if g[x] != x:
                moved.add(x)

    levels = []
    in_base = set()
    # The preferred prefix is honoured eagerly so that its points form a
    # contiguous initial segment of the base.
    for p in preferred:
        if p in moved and p not in in_base:
            levels.append(_Level(p, degree))
            in_base.add(p)

    def register(g):
        """File a strong generator at every level it belongs to."""
        for idx, lvl in enumerate(levels):
            if g[lvl.point] != lvl.point:
                for l in range(idx + 1):
                    levels[l].gens.append(g)
                return idx
        pt = min(x for x in range(1, degree + 1) if g[x] != x and x not in in_base)
        levels.append(_Level(pt, degree))
        in_base.add(pt)
        for lvl in levels:
            lvl.gens.append(g)
        return len(levels) - 1

    for g in gens_raw:
        if g != identity:
            register(g)

    chain = StabilizerChain(degree, levels)
    i = len(levels) - 1
    while i >= 0:
        lvl = levels[i]
        lvl.recompute(degree)
        descend = False
        for p in lvl.sorted_orbit:
            up = lvl.transversal[p]
            for g in lvl.gens:
                q = g[p]
                schreier = _mul(_mul(up, g), _inv(lvl.transversal[q]))
                if schreier == identity:
                    continue
                residue, j = chain.sift(schreier, i + 1)
                if residue == identity:
                    continue
                if j == len(levels):
                    pt = min(
                        x
                        for x in range(1, degree + 1)
                        if residue[x] != x and x not in in_base
                    )
                    levels.append(_Level(pt, degree))
                    in_base.add(pt)
                for l in range(i + 1, j + 1):
                    levels[l].gens.append(residue)
                i = j
                descend = True
                break
            if descend:
                break
        if not descend:
            i -= 1
    for lvl in levels:
        lvl.recompute(degree)
    return chain


class PermGroup:
    """A permutation group on {1..degree} given by generators."""

    def __init__(self, generators, degree: int | None = None):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group with no generators")
            degree = max(g.degree for g in gens)
        gens = [g.extend(degree) if g.degree < degree else g for g in gens]
        for g in gens:
            if g.degree != degree:
                raise ValueError("generator degree exceeds group degree")
        kept = []
        seen = set()
        for g in gens:
            if not g.is_identity and g.images not in seen:
                seen.add(g.images)
                kept.append(g)
        self.degree = degree
        self.generators = tuple(kept)
        self._raw = tuple(g.images for g in kept)
        self._chains = {}

    @classmethod
    def from_cycles(cls, texts, degree: int) -> "PermGroup":
        return cls([Permutation.from_cycles(t, degree) for t in texts], degree)

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls([], degree)

    @classmethod
    def _with_chain(cls, gens_raw, degree, chain) -> "PermGroup":
        g = cls([Permutation(r) for r in gens_raw], degree)
        g._chains[()] = chain
        return g

    def chain(self, preferred_base=()) -> StabilizerChain:
        """The stabilizer chain, memoized per preferred base prefix.

        Building is idempotent and deterministic, so a rebuild racing another
        thread lands on an identical chain and either assignment may win."""
        key = tuple(preferred_base)
        got = self._chains.get(key)
        if got is None:
            got = _build_chain(self._raw, self.degree, key)
            self._chains[key] = got
        return got

    def order(self) -> int:
        return self.chain().order()

    def __contains__(self, perm: Permutation) -> bool:
        raw = perm.images
        if perm.degree != self.degree:
            if perm.degree < self.degree:
                raw = perm.extend(self.degree).images
            elif all(x <= self.degree or perm(x) == x for x in range(1, perm.degree + 1)):
                raw = tuple(raw[: self.degree + 1])
            else:
                return False
        residue, _ = self.chain().sift(raw)
        return residue == _identity(self.degree)

    def contains(self, perm: Permutation) -> bool:
        return perm in self

    def moved_points(self):
        moved = set()
        for raw in self._raw:
            for x in range(1, self.degree + 1):
                if raw[x] != x:
                    moved.add(x)
        return moved

    def fixed_points(self) -> frozenset:
        return frozenset(range(1, self.degree + 1)) - self.moved_points()

    def orbits(self):
        """Orbits on {1..degree} as frozensets, sorted by least point."""
        seen = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            orb = {start}
            queue = [start]
            while queue:
                p = queue.pop()
                for raw in self._raw:
                    q = raw[p]
                    if q not in orb:
                        orb.add(q)
                        queue.append(q)
            seen |= orb
            out.append(frozenset(orb))
        return out

    def orbit(self, point: int) -> frozenset:
        orb = {point}
        queue = [point]
        while queue:
            p = queue.pop()
            for raw in self._raw:
                q = raw[p]
                if q not in orb:
                    orb.add(q)
                    queue.append(q)
        return frozenset(orb)

    def is_transitive(self) -> bool:
        return len(self.orbit(1)) == self.degree

    def is_primitive(self) -> bool:
        """Primitivity via minimal block systems (union-find on point pairs)."""
        if not self.is_transitive():
            raise ValueError("primitivity is defined for transitive groups only")
        n = self.degree
        if n == 1:
            return True
        for beta in range(2, n + 1):
            if len(self._minimal_block(1, beta)) < n:
                return False
        return True

    def _minimal_block(self, alpha, beta):
        parent = list(range(self.degree + 1))

        def find(x):
            root = x
            while parent[root] != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        parent[find(beta)] = find(alpha)
        queue = [(alpha, beta)]
        while queue:
            u, v = queue.pop()
            for raw in self._raw:
                a, b = find(raw[u]), find(raw[v])
                if a != b:
                    parent[b] = a
                    queue.append((a, b))
        block = frozenset(x for x in range(1, self.degree + 1) if find(x) == find(alpha))
        return block

    def pointwise_stabilizer(self, points) -> "PermGroup":
        """Subgroup fixing every listed point, read off a re-based chain."""
        pts = set(points)
        prefix = tuple(sorted(pts & self.moved_points()))
        if not prefix:
            return PermGroup(self.generators, self.degree)
        chain = self.chain(prefix)
        split = 0
        while split < len(chain.levels) and chain.levels[split].point in pts:
            split += 1
        tail = chain.levels[split:]
        gens = []
        seen = set()
        for lvl in tail:
            for g in lvl.gens:
                if g not in seen:
                    seen.add(g)
                    gens.append(g)
        sub = StabilizerChain(self.degree, tail)
        return PermGroup._with_chain(gens, self.degree, sub)

    def setwise_stabilizer(self, points) -> "PermGroup":
        from .search import setwise_stabilizer as _setwise

        return _setwise(self, points)

    def enumerate_elements(self, budget: int = DEFAULT_ELEMENT_BUDGET):
        """Yield all elements in deterministic chain order."""
        size = self.order()
        if size > budget:
            raise BudgetExceededError(
                f"group order {size} exceeds enumeration budget {budget}"
            )
        for raw in self._elements_raw():
            yield Permutation(raw)

    def _elements_raw(self):
        levels = self.chain().levels

        def rec(idx):
            if idx == len(levels):
                yield _identity(self.degree)
                return
            lvl = levels[idx]
            for p in lvl.sorted_orbit:
                t = lvl.transversal[p]
                for s in rec(idx + 1):
                    yield _mul(s, t)

        return rec(0)

    def random_element(self, rng) -> Permutation:
        """Uniformly random element (product of random coset representatives)."""
        raw = _identity(self.degree)
        for lvl in self.chain().levels:
            p = rng.choice(lvl.sorted_orbit)
            raw = _mul(raw, lvl.transversal[p])
        return Permutation(raw)

    def same_group(self, other: "PermGroup") -> bool:
        """Equality as sets: equal orders plus mutual generator membership."""
        if self.degree != other.degree:
            return False
        if self.order() != other.order():
            return False
        return all(g in other for g in self.generators) and all(
            g in self for g in other.generators
        )

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(g in other for g in self.generators)

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"


def build_chain(group: PermGroup, preferred_base=()) -> StabilizerChain:
    return group.chain(tuple(preferred_base))


def order(group: PermGroup) -> int:
    return group.order()


def contains(group: PermGroup, perm: Permutation) -> bool:
    return perm in group


def orbits(group: PermGroup):
    return group.orbits()


def fixed_points(group: PermGroup) -> frozenset:
    return group.fixed_points()


def pointwise_stabilizer(group: PermGroup, points) -> PermGroup:
    return group.pointwise_stabilizer(points)


def setwise_stabilizer(group: PermGroup, points) -> PermGroup:
    return group.setwise_stabilizer(points)


def enumerate_elements(group: PermGroup, budget: int = DEFAULT_ELEMENT_BUDGET):
    return group.enumerate_elements(budget)


def is_transitive(group: PermGroup) -> bool:
    return group.is_transitive()


def is_primitive(group: PermGroup) -> bool:
    return group.is_primitive()
