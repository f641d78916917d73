"""Permutations on {1..n} with cycle-notation I/O.

Points are 1-based everywhere, including the internal image table (slot 0 is
a fixed sentinel).  Products act left to right: x^(a*b) = (x^a)^b.
"""

from __future__ import annotations

import re

__all__ = [
    "Permutation",
    "CycleParseError",
    "parse_cycles",
    "render_cycles",
    "compose",
    "inverse",
    "parity",
]

_TOKEN = re.compile(r"\s+")


class CycleParseError(ValueError):
    """Raised for text that is not valid cycle notation."""


class Permutation:
    """An immutable permutation of {1..degree}."""

    __slots__ = ("images",)

    def __init__(self, images):
        # images[0] is a sentinel 0 so that images[x] is the image of x.
        self.images = tuple(images)
        if not self.images or self.images[0] != 0:
            raise ValueError("image table must carry the 0 sentinel")
        if sorted(self.images[1:]) != list(range(1, len(self.images))):
            raise ValueError("image table is not a bijection on 1..n")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree + 1))

    @classmethod
    def from_images(cls, images_1based, degree: int | None = None) -> "Permutation":
        """Build from the list of images of 1, 2, ..., n."""
        imgs = [0] + list(images_1based)
        if degree is not None and len(imgs) - 1 != degree:
            raise ValueError(f"expected {degree} images, got {len(imgs) - 1}")
        return cls(imgs)

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Permutation":
        return parse_cycles(text, degree)

    @property
    def degree(self) -> int:
        return len(self.images) - 1

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        a, b = self.images, other.images
        if len(a) != len(b):
            raise ValueError("degree mismatch in product")
        return Permutation([b[x] for x in a])

    def inverse(self) -> "Permutation":
        a = self.images
        inv = [0] * len(a)
        for x in range(1, len(a)):
            inv[a[x]] = x
        return Permutation(inv)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        square = self
        while k:
            if k & 1:
                result = result * square
            square = square * square
            k >>= 1
        return result

    @property
    def is_identity(self) -> bool:
        return all(self.images[x] == x for x in range(1, len(self.images)))

    def order(self) -> int:
        n = 1
        for c in self.cycles():
            n = _lcm(n, len(c))
        return n

    def support(self) -> frozenset:
        return frozenset(x for x in range(1, self.degree + 1) if self.images[x] != x)

    def cycles(self, include_fixed: bool = False):
        """Cycles as tuples, each starting at its least point, sorted by it."""
        a = self.images
        seen = [False] * len(a)
        out = []
        for start in range(1, len(a)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = a[start]
            while x != start:
                seen[x] = True
                cyc.append(x)
                x = a[x]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def sign(self) -> int:
        s = 1
        for c in self.cycles():
            if len(c) % 2 == 0:
                s = -s
        return s

    def extend(self, degree: int) -> "Permutation":
        """The same permutation viewed on a larger domain."""
        if degree < self.degree:
            raise ValueError("cannot shrink a permutation")
        return Permutation(list(self.images) + list(range(self.degree + 1, degree + 1)))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({render_cycles(self)!r}, degree={self.degree})"

    def __str__(self) -> str:
        return render_cycles(self)


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a // gcd(a, b) * b


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse cycle notation: "()" is the identity, otherwise one or more
    parenthesised cycles of 1-based points.  Whitespace is ignored."""
    s = _TOKEN.sub("", text)
    if not s:
        raise CycleParseError("empty permutation text")
    if s == "()":
        return Permutation.identity(degree)
    if not s.startswith("(") or not s.endswith(")"):
        raise CycleParseError(f"not cycle notation: {text!r}")
    images = list(range(degree + 1))
    touched = set()
    for body in s[1:-1].split(")("):
        parts = body.split(",")
        if len(parts) < 2:
            raise CycleParseError(f"cycle needs at least two points: ({body})")
        try:
            points = [int(p) for p in parts]
        except ValueError:
            raise CycleParseError(f"non-integer point in cycle ({body})") from None
        for p in points:
            if not 1 <= p <= degree:
                raise CycleParseError(f"point {p} outside 1..{degree}")
            if p in touched:
                raise CycleParseError(f"point {p} repeated across cycles")
            touched.add(p)
        for i, p in enumerate(points):
            images[p] = points[(i + 1) % len(points)]
    return Permutation(images)


def render_cycles(perm: Permutation) -> str:
    """Canonical cycle text: cycles sorted by least moved point, each cycle
    starting at its least point; fixed points omitted; identity is "()"."""
    cycs = perm.cycles()
    if not cycs:
        return "()"
    return "".join("(" + ",".join(str(p) for p in c) + ")" for c in cycs)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Left-to-right product: x -> (x^a)^b."""
    return a * b


def inverse(a: Permutation) -> Permutation:
    return a.inverse()


def parity(a: Permutation) -> str:
    return "even" if a.sign() == 1 else "odd"
