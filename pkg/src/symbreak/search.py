"""Backtrack searches over stabilizer chains.

All searches walk the tree of base-point images.  A node at depth i fixes the
images of the first i base points; the partial product R turns the next
level's orbit into candidate images.  Pruning: candidate images must respect
the constraint classes, and on the all-identity spine candidates are skipped
unless minimal in their orbit under the already-found subgroup (sound because
any stabilizer element can be multiplied into that subgroup).
"""

from __future__ import annotations

from .group import PermGroup, _identity, _inv, _mul
from .perm import Permutation

__all__ = [
    "setwise_stabilizer",
    "find_set_preserver",
    "class_stabilizer",
    "find_class_preserver",
    "find_conjugator",
]


def _orbit_min(q, gens):
    if not gens:
        return q
    seen = {q}
    best = q
    stack = [q]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                if y < best:
                    best = y
                stack.append(y)
    return best


def _class_backtrack(group, class_of, collect, chain):
    """Search for non-identity elements preserving every class setwise.

    collect=False returns the first such element (raw) or None;
    collect=True returns the full list of subgroup generators (raw)."""
    n = group.degree
    identity = _identity(n)
    levels = chain.levels

    found = []
    k_strong = []
    k_group = None

    def leaf(g):
        nonlocal k_group
        for x in range(1, n + 1):
            if class_of[g[x]] != class_of[x]:
                return None
        if not collect:
            return g
        perm = Permutation(g)
        if k_group is None or perm not in k_group:
            found.append(perm)
            k_group = PermGroup(found, n)
            k_strong[:] = k_group.chain(chain.base).strong_generators()
        return None

    def dfs(idx, R, spine):
        if idx == len(levels):
            if R != identity:
                return leaf(R)
            return None
        lvl = levels[idx]
        cb = class_of[lvl.point]
        prune_gens = None
        if collect and spine and k_strong:
            pts = chain.base[:idx]
            prune_gens = [g for g in k_strong if all(g[p] == p for p in pts)]
        for q in lvl.sorted_orbit:
            beta = R[q]
            if class_of[beta] != cb:
                continue
            if prune_gens and q != _orbit_min(q, prune_gens):
                continue
            hit = dfs(idx + 1, R if q == lvl.point and spine else _mul(lvl.transversal[q], R), spine and q == lvl.point)
            if hit is not None:
                return hit
        return None

    hit = dfs(0, identity, True)
    if collect:
        return found
    return hit


def _normalize_points(group, points):
    pts = set(points)
    for p in pts:
        if not 1 <= p <= group.degree:
            raise ValueError(f"point {p} outside 1..{group.degree}")
    return pts


def _set_classes(group, points):
    class_of = [0] * (group.degree + 1)
    for p in points:
        class_of[p] = 1
    return class_of


def _orbits_monochromatic(group, class_of):
    return all(len({class_of[p] for p in orb}) == 1 for orb in group.orbits())


def setwise_stabilizer(group: PermGroup, points) -> PermGroup:
    """{g in G : S^g = S}, by backtrack over a chain based inside S."""
    pts = _normalize_points(group, points)
    class_of = _set_classes(group, pts)
    if _orbits_monochromatic(group, class_of):
        return PermGroup(group.generators, group.degree)
    moved = group.moved_points()
    hint = tuple(sorted(pts & moved)) + tuple(sorted(moved - pts))
    chain = group.chain(hint)
    gens = _class_backtrack(group, class_of, True, chain)
    return PermGroup(gens, group.degree)


def find_set_preserver(group: PermGroup, points, rebase=False):
    """Some non-identity g with S^g = S, or None.  S is regular iff None
    (and the group is nontrivial)."""
    pts = _normalize_points(group, points)
    class_of = _set_classes(group, pts)
    return _find_preserver(group, class_of, rebase, pts)


def class_stabilizer(group: PermGroup, class_of) -> PermGroup:
    """{g in G : every class of the labeling is setwise fixed}."""
    if _orbits_monochromatic(group, class_of):
        return PermGroup(group.generators, group.degree)
    gens = _class_backtrack(group, class_of, True, group.chain())
    return PermGroup(gens, group.degree)


def find_class_preserver(group: PermGroup, class_of, rebase=False):
    """Some non-identity element fixing every class setwise, or None."""
    return _find_preserver(group, class_of, rebase, None)


def _find_preserver(group, class_of, rebase, rebase_pts):
    if _orbits_monochromatic(group, class_of):
        for g in group.generators:
            return g.images
        return None
    if rebase:
        moved = group.moved_points()
        if rebase_pts is None:
            by_class = sorted(moved, key=lambda p: (class_of[p], p))
            chain = group.chain(tuple(by_class))
        else:
            hint = tuple(sorted(rebase_pts & moved)) + tuple(sorted(moved - rebase_pts))
            chain = group.chain(hint)
    else:
        chain = group.chain()
    return _class_backtrack(group, class_of, False, chain)


def find_conjugator(pairs, degree):
    """A raw c with a^c = b for every (a, b) pair, or None.

    Assignments propagate along generator edges (c must map the functional
    graph of each a onto the graph of its b), so one seed per orbit decides
    everything; orbits are seeded at points lying in short generator cycles."""
    n = degree
    srcs = [a for a, _ in pairs]
    tgts = [b for _, b in pairs]

    def cycle_len(raw, x):
        k = 1
        y = raw[x]
        while y != x:
            y = raw[y]
            k += 1
        return k

    sig_src = {x: tuple(cycle_len(a, x) for a in srcs) for x in range(1, n + 1)}
    sig_tgt = {}
    for v in range(1, n + 1):
        sig_tgt.setdefault(tuple(cycle_len(b, v) for b in tgts), []).append(v)

    orbits = []
    seen = set()
    for x in range(1, n + 1):
        if x in seen:
            continue
        orb = {x}
        stack = [x]
        while stack:
            p = stack.pop()
            for a in srcs:
                q = a[p]
                if q not in orb:
                    orb.add(q)
                    stack.append(q)
        seen |= orb
        root = min(orb, key=lambda p: (min(sig_src[p]), p))
        orbits.append((root, orb))

    c = [0] * (n + 1)
    used = [False] * (n + 1)

    def propagate(root, v, journal):
        queue = [root]
        c[root] = v
        used[v] = True
        journal.append((root, v))
        while queue:
            x = queue.pop()
            for a, b in pairs:
                y = a[x]
                w = b[c[x]]
                if c[y]:
                    if c[y] != w:
                        return False
                else:
                    if used[w]:
                        return False
                    c[y] = w
                    used[w] = True
                    journal.append((y, w))
                    queue.append(y)
        return True

    def undo(journal):
        for x, v in journal:
            c[x] = 0
            used[v] = False

    def solve(oi):
        if oi == len(orbits):
            return tuple([0] + c[1:])
        root, _orb = orbits[oi]
        for v in sig_tgt.get(sig_src[root], []):
            if used[v]:
                continue
            journal = []
            if propagate(root, v, journal):
                got = solve(oi + 1)
                if got is not None:
                    return got
            undo(journal)
        return None

    return solve(0)
