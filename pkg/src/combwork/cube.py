"""Hypercube primitives: vertices, subcubes, containment, antipodes.

Vertices of Q_n are ints in ``[0, 2**n)``.  Coordinate ``i`` (1-based, as
printed leftmost-first in ternary strings) is bit ``i - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb


@dataclass(frozen=True, order=True)
class Subcube:
    """A word in {0,1,*}^n packed as a star mask and a value word."""

    n: int
    stars: int
    values: int

    def __post_init__(self):
        full = (1 << self.n) - 1
        if self.stars & ~full or self.values & ~full:
            raise ValueError("subcube bits outside dimension")
        if self.values & self.stars:
            raise ValueError("star positions must carry value 0")

    @property
    def k(self) -> int:
        return bin(self.stars).count("1")

    @classmethod
    def parse(cls, text: str) -> "Subcube":
        text = text.strip().strip("()").replace(",", "")
        stars = values = 0
        for i, ch in enumerate(text):
            if ch == "*":
                stars |= 1 << i
            elif ch == "1":
                values |= 1 << i
            elif ch != "0":
                raise ValueError(f"bad subcube character {ch!r}")
        return cls(len(text), stars, values)

    def __str__(self) -> str:
        return "".join(
            "*" if (self.stars >> i) & 1 else str((self.values >> i) & 1)
            for i in range(self.n)
        )

    def flip_bits(self) -> list[int]:
        return [i for i in range(self.n) if (self.stars >> i) & 1]

    def vertices(self) -> list[int]:
        return [v.values for v in subcubes_within(self, 0)]


def vertex_str(v: int, n: int) -> str:
    return "".join(str((v >> i) & 1) for i in range(n))


def parse_vertex(text: str) -> int:
    return sum(1 << i for i, ch in enumerate(text.strip()) if ch == "1")


def full_cube(n: int) -> Subcube:
    return Subcube(n, (1 << n) - 1, 0)


def contains(outer: Subcube, inner: Subcube) -> bool:
    if outer.n != inner.n:
        raise ValueError(f"dimension mismatch: {outer.n} vs {inner.n}")
    if inner.stars & ~outer.stars:
        return False
    return (inner.values & ~outer.stars) == outer.values


def subcubes_within(outer: Subcube, k: int) -> list[Subcube]:
    """All k-subcubes contained in ``outer``, in a fixed deterministic order."""
    flips = outer.flip_bits()
    d = len(flips)
    if not 0 <= k <= d:
        raise ValueError(f"k={k} outside [0, {d}]")
    out = []
    for keep in combinations(flips, k):
        stars = sum(1 << i for i in keep)
        fixed = [i for i in flips if i not in keep]
        for bits in product((0, 1), repeat=len(fixed)):
            val = outer.values
            for i, b in zip(fixed, bits):
                val |= b << i
            out.append(Subcube(outer.n, stars, val))
    return out


def all_subcubes(n: int, k: int) -> list[Subcube]:
    return subcubes_within(full_cube(n), k)


def count_subcubes(n: int, k: int) -> int:
    """|Q_k^n| = C(n, k) 2^(n-k)."""
    return comb(n, k) << (n - k)


def antipode(v: int, n: int) -> int:
    return v ^ ((1 << n) - 1)


def weight(v: int) -> int:
    return bin(v).count("1")


def edges(n: int) -> list[tuple[int, int]]:
    """Edges of Q_n as (lower endpoint, direction), direction in ``range(n)``."""
    return [(v, i) for v in range(1 << n) for i in range(n) if not (v >> i) & 1]


def neighbours(v: int, n: int) -> list[int]:
    return [v ^ (1 << i) for i in range(n)]


def apply_automorphism(s: Subcube, perm: tuple[int, ...], flip: int) -> Subcube:
    """Image of ``s`` under coordinate permutation ``perm`` then XOR by ``flip``.

    Coordinate ``i`` moves to ``perm[i]``; flipping only affects non-star
    coordinates.
    """
    stars = values = 0
    for i in range(s.n):
        j = perm[i]
        if (s.stars >> i) & 1:
            stars |= 1 << j
        elif (s.values >> i) & 1:
            values |= 1 << j
    return Subcube(s.n, stars, (values ^ flip) & ~stars)
