"""Regular sets, distinguishing labelings and orbitals.

A subset of the domain is regular when its setwise stabilizer is
trivial; a labeling is distinguishing when no group element except the
identity preserves every label class.  The distinguishing number D(G)
is the least number of labels in a distinguishing labeling; for a
nontrivial group D(G) <= 2 exactly when a regular set exists.

Exhaustive searches here are honest about their limits: every search
that cannot finish within its budget reports `inconclusive` rather
than guessing.  Subset sweeps use the cycle structure of the group
elements (a set is fixed by g exactly when it is a union of cycles of
g), which turns "mark every non-regular subset" into one bitmap pass
per element.
"""

import random
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .perm import Permutation
from .group import PermGroup, BudgetExceededError
from .search import setwise_stabilizer, find_set_preserver

__all__ = [
    "Labeling",
    "RegularSetReport",
    "SearchOutcome",
    "DistinguishingReport",
    "partition_stabilizer",
    "is_distinguishing",
    "check_set",
    "find_regular_set",
    "distinguishing_number",
    "an_parallel_formula",
    "orbitals",
]

DEFAULT_SWEEP_BUDGET = 50_000_000     # marks in a subset sweep
DEFAULT_LABELING_BUDGET = 2_000_000   # labelings examined per label count
ENUM_ORDER_LIMIT = 2_000_000          # largest group we fully enumerate


@dataclass(frozen=True)
class Labeling:
    """labels[i-1] is the label of point i; labels drawn from {1..k}."""

    degree: int
    labels: tuple
    k: int

    def __post_init__(self):
        if len(self.labels) != self.degree:
            raise ValueError("labeling length differs from degree")
        if self.labels and (min(self.labels) < 1 or max(self.labels) > self.k):
            raise ValueError("label out of range")

    @classmethod
    def from_labels(cls, labels, k: Optional[int] = None) -> "Labeling":
        labels = tuple(labels)
        if k is None:
            k = max(labels) if labels else 1
        return cls(len(labels), labels, k)

    @classmethod
    def from_set(cls, degree: int, points) -> "Labeling":
        """Two labels: 1 on the given points, 2 elsewhere."""
        pts = set(points)
        if any(not 1 <= p <= degree for p in pts):
            raise ValueError("point outside domain")
        return cls(degree, tuple(1 if x in pts else 2 for x in range(1, degree + 1)), 2)

    def classes(self):
        """Label classes as sorted point lists, in label order."""
        out = {}
        for x, lab in enumerate(self.labels, start=1):
            out.setdefault(lab, []).append(x)
        return [out[lab] for lab in sorted(out)]


@dataclass(frozen=True)
class RegularSetReport:
    set: tuple
    stabilizer_order: int
    witness: Optional[Permutation]   # nontrivial stabilizing element, if any

    @property
    def is_regular(self) -> bool:
        return self.stabilizer_order == 1


@dataclass
class SearchOutcome:
    """Result of a regular-set search.

    status: "found" (report carries the set), "none" (search space proved
    empty), or "inconclusive" (budget exhausted before a proof).
    """

    status: str
    report: Optional[RegularSetReport] = None
    sizes: tuple = ()
    mode: str = "exhaustive"
    seed: Optional[int] = None
    budget_used: int = 0
    detail: str = ""


@dataclass
class DistinguishingReport:
    """Outcome of a distinguishing-number computation.

    status "exact" pins value; "inconclusive" carries proven bounds:
    lower is the least k not yet excluded, upper the least k with a
    verified labeling (None if none was found up to k_max).
    """

    status: str
    value: Optional[int] = None
    lower: int = 1
    upper: Optional[int] = None
    witness: Optional[Labeling] = None
    detail: str = ""


def partition_stabilizer(group: PermGroup, labeling: Labeling) -> PermGroup:
    """Elements preserving every label class setwise.

    Iterated setwise stabilizers, smallest classes first; the largest
    class is the complement of the rest, so it is never searched.
    """
    if labeling.degree != group.degree:
        raise ValueError("labeling degree differs from group degree")
    classes = sorted(labeling.classes(), key=len)
    current = group
    for cls in classes[:-1]:
        if current.order() == 1:
            break
        current = setwise_stabilizer(current, cls)
    return current


def is_distinguishing(group: PermGroup, labeling: Labeling) -> bool:
    return partition_stabilizer(group, labeling).order() == 1


def check_set(group: PermGroup, points) -> RegularSetReport:
    """Setwise-stabilizer report for one explicit subset."""
    pts = tuple(sorted(set(points)))
    stab = setwise_stabilizer(group, pts)
    order = stab.order()
    witness = stab.generators[0] if order > 1 else None
    return RegularSetReport(pts, order, witness)


def _cycle_masks(raw, degree):
    """Bitmasks of the cycles of a raw image tuple, fixed points included."""
    seen = [False] * (degree + 1)
    masks = []
    for start in range(1, degree + 1):
        if seen[start]:
            continue
        m = 0
        x = start
        while not seen[x]:
            seen[x] = True
            m |= 1 << (x - 1)
            x = raw[x]
        masks.append(m)
    return masks


def _sweep_nonregular(group: PermGroup, budget: int):
    """Mark every subset fixed by some non-identity element.

    Returns (marked bool array of size 2^degree, marks used) or None if
    the budget runs out.  A subset is fixed by g exactly when it is a
    union of g's cycles, so each element contributes 2^(cycle count)
    marks, generated by subset-OR doubling.
    """
    n = group.degree
    if n > 26:
        return None
    try:
        elements = group.enumerate_elements(ENUM_ORDER_LIMIT)
    except BudgetExceededError:
        return None
    marked = np.zeros(1 << n, dtype=bool)
    identity = tuple(range(n + 1))
    used = 0
    for perm in elements:
        raw = perm.images
        if raw == identity:
            continue
        cycles = _cycle_masks(raw, n)
        used += 1 << len(cycles)
        if used > budget:
            return None
        arr = np.zeros(1, dtype=np.int64)
        for m in cycles:
            arr = np.concatenate([arr, arr | m])
        marked[arr] = True
    return marked, used


def _mask_to_points(mask: int):
    return tuple(x + 1 for x in range(mask.bit_length()) if mask >> x & 1)


def find_regular_set(group: PermGroup, sizes=None, mode: str = "exhaustive",
                     budget: int = DEFAULT_SWEEP_BUDGET,
                     seed: int = 0) -> SearchOutcome:
    """Search for a subset with trivial setwise stabilizer.

    sizes: inclusive (lo, hi) size range; defaults to all sizes.
    Exhaustive mode proves absence when it completes; randomized mode
    (seeded, budget = number of trials) can only prove presence.  The
    reported set is minimal in (size, lexicographic point order).
    """
    n = group.degree
    lo, hi = (0, n) if sizes is None else (max(0, sizes[0]), min(n, sizes[1]))
    if lo > hi:
        raise ValueError("empty size range")

    if mode == "randomized":
        rng = random.Random(seed)
        points = list(range(1, n + 1))
        for trial in range(budget):
            size = rng.randint(lo, hi)
            cand = sorted(rng.sample(points, size))
            witness_raw = find_set_preserver(group, cand)
            if witness_raw is None:
                rep = RegularSetReport(tuple(cand), 1, None)
                return SearchOutcome("found", rep, (lo, hi), mode, seed, trial + 1)
        return SearchOutcome("inconclusive", None, (lo, hi), mode, seed, budget,
                             detail="no regular set met in the sampled trials")
    if mode != "exhaustive":
        raise ValueError(f"unknown mode {mode!r}")

    if group.order() == 1:
        size = lo
        rep = RegularSetReport(tuple(range(1, size + 1)), 1, None)
        return SearchOutcome("found", rep, (lo, hi), mode, None, 0)

    swept = _sweep_nonregular(group, budget)
    if swept is None:
        return SearchOutcome("inconclusive", None, (lo, hi), mode, None, budget,
                             detail="sweep budget exhausted; absence not proved")
    marked, used = swept
    counts = np.bitwise_count(np.arange(1 << n, dtype=np.uint32))
    eligible = (~marked) & (counts >= lo) & (counts <= hi)
    if not eligible.any():
        return SearchOutcome("none", None, (lo, hi), mode, None, used,
                             detail="all subsets in range have nontrivial stabilizer")
    hit = np.flatnonzero(eligible)
    best_size = int(counts[hit].min())
    cands = hit[counts[hit] == best_size]
    best = min(_mask_to_points(int(m)) for m in cands)
    return SearchOutcome("found", RegularSetReport(best, 1, None),
                         (lo, hi), mode, None, used)


def regular_set_size_census(group: PermGroup, sizes,
                            budget: int = DEFAULT_SWEEP_BUDGET):
    """One regular set per size in the range, or None where none exists.

    Returns dict size -> tuple|None, or None if the sweep is over budget.
    """
    n = group.degree
    swept = _sweep_nonregular(group, budget)
    if swept is None:
        return None
    marked, _ = swept
    counts = np.bitwise_count(np.arange(1 << n, dtype=np.uint32))
    out = {}
    for size in range(sizes[0], sizes[1] + 1):
        hit = np.flatnonzero((~marked) & (counts == size))
        out[size] = _mask_to_points(int(hit[0])) if hit.size else None
    return out


# ---------------------------------------------------------------------------
# distinguishing labelings


def _rgs_labelings(n: int, k: int):
    """All label vectors of length n with labels 1..k, one per partition.

    Restricted-growth normalization: a label may appear only after all
    smaller labels have appeared.  Quotients out label permutations.
    """
    out = []
    vec = [0] * n

    def rec(i, used):
        if i == n:
            out.append(tuple(vec))
            return
        top = min(used + 1, k)
        for lab in range(1, top + 1):
            vec[i] = lab
            rec(i + 1, max(used, lab))

    rec(0, 0)
    return out


def _rgs_count(n: int, k: int) -> int:
    # sum of Stirling numbers S(n, j), j <= k
    stir = [[0] * (n + 1) for _ in range(n + 1)]
    stir[0][0] = 1
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            stir[i][j] = stir[i - 1][j - 1] + j * stir[i - 1][j]
    return sum(stir[n][j] for j in range(1, min(k, n) + 1))


def _surviving_labelings(group: PermGroup, k: int, budget: int):
    """Exhaustive distinguishing test over all k-labelings.

    Returns ("yes", labels) with the first surviving labeling in
    restricted-growth order, ("no", None) when none survives, or
    ("unknown", None) when over budget.  Kills label vectors against
    every non-identity group element in one vectorized pass.
    """
    n = group.degree
    if _rgs_count(n, k) > budget:
        return "unknown", None
    try:
        elements = group.enumerate_elements(ENUM_ORDER_LIMIT)
    except BudgetExceededError:
        return "unknown", None
    vecs = np.array(_rgs_labelings(n, k), dtype=np.int8)
    alive = np.ones(len(vecs), dtype=bool)
    identity = tuple(range(n + 1))
    for perm in elements:
        raw = perm.images
        if raw == identity:
            continue
        imap = np.fromiter((raw[x] - 1 for x in range(1, n + 1)),
                           dtype=np.intp, count=n)
        idx = np.flatnonzero(alive)
        if idx.size == 0:
            return "no", None
        rows = vecs[idx]
        preserved = (rows[:, imap] == rows).all(axis=1)
        alive[idx[preserved]] = False
    idx = np.flatnonzero(alive)
    if idx.size == 0:
        return "no", None
    return "yes", tuple(int(v) for v in vecs[idx[0]])


def _random_distinguishing(group: PermGroup, k: int, trials: int, seed: int):
    """Seeded random k-labelings verified by partition stabilizer.

    Works at any group order (no enumeration); can only prove presence.
    """
    rng = random.Random(seed)
    n = group.degree
    for _ in range(trials):
        labels = tuple(rng.randint(1, k) for _ in range(n))
        if len(set(labels)) < min(k, n):
            continue
        lab = Labeling(n, labels, k)
        if is_distinguishing(group, lab):
            return lab
    return None


def distinguishing_number(group: PermGroup, k_max: int = 8,
                          budget: int = DEFAULT_LABELING_BUDGET,
                          sweep_budget: int = DEFAULT_SWEEP_BUDGET,
                          seed: int = 0) -> DistinguishingReport:
    """Least label count admitting a distinguishing labeling.

    Exact only when every smaller count is exhaustively excluded;
    otherwise inconclusive with honest bounds.  k=2 is decided through
    the regular-set sweep (a 2-labeling distinguishes exactly when one
    class is a regular set), larger k through the labeling sweep, with
    a seeded randomized fallback for the positive direction.
    """
    if group.order() == 1:
        witness = Labeling(group.degree, (1,) * group.degree, 1)
        return DistinguishingReport("exact", 1, witness=witness)

    lower = 2   # a nontrivial group needs at least two labels
    for k in range(2, k_max + 1):
        if k == 2:
            outcome = find_regular_set(group, mode="exhaustive",
                                       budget=sweep_budget)
            if outcome.status == "found":
                witness = Labeling.from_set(group.degree, outcome.report.set)
                return DistinguishingReport("exact", 2, lower=2, upper=2,
                                            witness=witness)
            if outcome.status == "none":
                lower = 3
                continue
            verdict = "unknown"
        else:
            verdict, labels = _surviving_labelings(group, k, budget)
            if verdict == "yes":
                witness = Labeling(group.degree, labels, k)
                return DistinguishingReport("exact", k, lower=k, upper=k,
                                            witness=witness)
            if verdict == "no":
                lower = k + 1
                continue
        # over budget: try to at least exhibit a labeling
        lab = _random_distinguishing(group, k, trials=200, seed=seed)
        if lab is not None:
            if lower == k:
                # every smaller count was exhaustively excluded
                return DistinguishingReport("exact", k, lower=k, upper=k,
                                            witness=lab)
            return DistinguishingReport(
                "inconclusive", lower=lower, upper=k, witness=lab,
                detail=f"{k}-labeling exhibited, smaller counts not excluded")
        return DistinguishingReport(
            "inconclusive", lower=lower, upper=None,
            detail=f"budget exhausted while deciding {k} labels")
    return DistinguishingReport("inconclusive", lower=lower, upper=None,
                                detail=f"no distinguishing labeling up to {k_max}")


def an_parallel_formula(n: int, k: int) -> int:
    """Smallest d with d**k >= n - 1."""
    if n < 3 or k < 1:
        raise ValueError("defined for n >= 3, k >= 1")
    d = 1
    while d ** k < n - 1:
        d += 1
    return d


def orbitals(group: PermGroup, ordered: bool = True):
    """Orbits of the group on pairs of distinct points.

    Ordered pairs by default; ordered=False merges (x,y) with (y,x).
    Classes come back sorted by least member for determinism.
    """
    n = group.degree
    if n < 2:
        raise ValueError("orbitals need degree >= 2")
    raws = [g.images for g in group.generators]
    if ordered:
        pairs = [(x, y) for x in range(1, n + 1) for y in range(1, n + 1) if x != y]
    else:
        pairs = [(x, y) for x in range(1, n + 1) for y in range(x + 1, n + 1)]
    seen = set()
    classes = []
    for start in pairs:
        if start in seen:
            continue
        orb = {start}
        queue = [start]
        while queue:
            x, y = queue.pop()
            for raw in raws:
                nxt = (raw[x], raw[y])
                if not ordered and nxt[0] > nxt[1]:
                    nxt = (nxt[1], nxt[0])
                if nxt not in orb:
                    orb.add(nxt)
                    queue.append(nxt)
        seen |= orb
        classes.append(frozenset(orb))
    classes.sort(key=lambda c: min(c))
    return classes
