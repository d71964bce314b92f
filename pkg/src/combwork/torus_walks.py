"""Two-step stay probabilities for balanced red/blue colourings of the torus Z_n^k.

The walk is non-lazy and uniform over the 2k signed unit directions.
Starting at a red vertex v, the walk "stays red for two steps" when both
v + d1 and v + d1 + d2 are red.  If r(u) counts red neighbours of u (with
multiplicity over directions) then

    p_R = sum_{u red} r(u)^2 / (|R| (2k)^2),

because each red u reached at step one is entered from r(u) red starts
and leaves to r(u) red endpoints.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from .core.certificate import Certificate, check, register_verifier
from .core.parallel import pmap

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class TorusColouring:
    n: int
    k: int
    red: frozenset  # vertex indices in row-major order

    @classmethod
    def from_bits(cls, n: int, k: int, bits: str) -> "TorusColouring":
        if len(bits) != n ** k or set(bits) - {"0", "1"}:
            raise ValueError("colouring bitstring has wrong length or alphabet")
        return cls(n, k, frozenset(i for i, ch in enumerate(bits) if ch == "1"))

    def bits(self) -> str:
        return "".join("1" if i in self.red else "0" for i in range(self.n ** self.k))

    def complement(self) -> "TorusColouring":
        return TorusColouring(self.n, self.k, frozenset(range(self.n ** self.k)) - self.red)

    @property
    def size(self) -> int:
        return self.n ** self.k


@dataclass(frozen=True)
class StayPair:
    p_R: Fraction
    p_B: Fraction

    def as_tuple(self) -> Point:
        return (self.p_R, self.p_B)


def coords(i: int, n: int, k: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        out.append(i % n)
        i //= n
    return tuple(reversed(out))


def index(c, n: int) -> int:
    i = 0
    for x in c:
        i = i * n + (x % n)
    return i


def neighbour_table(n: int, k: int) -> list[list[int]]:
    """``table[v]`` lists v + d for the 2k signed directions (repeats kept)."""
    out = []
    for v in range(n ** k):
        c = coords(v, n, k)
        row = []
        for axis in range(k):
            for s in (1, -1):
                w = list(c)
                w[axis] += s
                row.append(index(w, n))
        out.append(row)
    return out


def _check_balanced(c: TorusColouring) -> None:
    if c.size % 2 or 2 * len(c.red) != c.size:
        raise ValueError("colouring is not balanced")


def stay_pair(c: TorusColouring) -> StayPair:
    _check_balanced(c)
    nb = neighbour_table(c.n, c.k)
    half = c.size // 2
    denom = half * (2 * c.k) ** 2
    r_sum = b_sum = 0
    for u in range(c.size):
        same = sum(1 for w in nb[u] if (w in c.red) == (u in c.red))
        if u in c.red:
            r_sum += same * same
        else:
            b_sum += same * same
    return StayPair(Fraction(r_sum, denom), Fraction(b_sum, denom))


def one_step_pair(c: TorusColouring) -> StayPair:
    _check_balanced(c)
    nb = neighbour_table(c.n, c.k)
    half = c.size // 2
    r = sum(1 for u in c.red for w in nb[u] if w in c.red)
    blue = set(range(c.size)) - c.red
    b = sum(1 for u in blue for w in nb[u] if w in blue)
    return StayPair(Fraction(r, half * 2 * c.k), Fraction(b, half * 2 * c.k))


def stay_pair_walks(c: TorusColouring) -> StayPair:
    """Reference: enumerate every two-step walk from every start."""
    _check_balanced(c)
    nb = neighbour_table(c.n, c.k)
    blue = frozenset(range(c.size)) - c.red
    out = []
    for cls in (c.red, blue):
        good = 0
        for v in cls:
            for a in nb[v]:
                for b in nb[a]:
                    if a in cls and b in cls:
                        good += 1
        out.append(Fraction(good, len(cls) * (2 * c.k) ** 2))
    return StayPair(*out)


# -- exact convex hull membership ---------------------------------------------------

def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> list[Point]:
    """Monotone chain; counter-clockwise, collinear points dropped."""
    pts = sorted(set((Fraction(x), Fraction(y)) for x, y in points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def in_hull(p, hull: list[Point]) -> bool:
    """Closed membership; boundary counts as inside."""
    p = (Fraction(p[0]), Fraction(p[1]))
    if len(hull) == 1:
        return p == hull[0]
    if len(hull) == 2:
        a, b = hull
        return _cross(a, b, p) == 0 and min(a, b) <= p <= max(a, b)
    return all(_cross(hull[i], hull[(i + 1) % len(hull)], p) >= 0 for i in range(len(hull)))


K2_VERTICES = [(Fraction(0), Fraction(0)), (Fraction(1, 2), Fraction(1, 4)),
               (Fraction(3, 4), Fraction(9, 16)), (Fraction(1, 4), Fraction(1, 2)),
               (Fraction(9, 16), Fraction(3, 4)), (Fraction(1), Fraction(1))]
K2_HULL = convex_hull(K2_VERTICES)


def conjectured_vertices(k: int) -> list[Point]:
    if k < 2:
        raise ValueError("k must be at least 2")
    pts = [(Fraction(0), Fraction(0))]
    for l in range(k, 2 * k + 1):
        x, y = Fraction(l, 2 * k), Fraction(l * l, 4 * k * k)
        pts += [(x, y), (y, x)]
    return sorted(set(pts))


def hull_k2_membership(p) -> bool:
    if isinstance(p, StayPair):
        p = p.as_tuple()
    return in_hull(p, K2_HULL)


def hull_conjecture_membership(p, k: int) -> bool:
    if isinstance(p, StayPair):
        p = p.as_tuple()
    return in_hull(p, convex_hull(conjectured_vertices(k)))


# -- sweeps -----------------------------------------------------------------------

EXHAUSTIVE_LIMIT = 10 ** 7


def _adjacency_matrix(n: int, k: int) -> np.ndarray:
    N = n ** k
    A = np.zeros((N, N), dtype=np.int64)
    for v, row in enumerate(neighbour_table(n, k)):
        for w in row:
            A[v, w] += 1
    return A


def _pairs_for_block(args):
    n, k, reds = args
    N = n ** k
    A = _adjacency_matrix(n, k)
    C = np.zeros((len(reds), N), dtype=np.int64)
    for row, red in enumerate(reds):
        C[row, list(red)] = 1
    R = C @ A.T          # red neighbours of each vertex
    B = (1 - C) @ A.T    # blue neighbours
    r_num = (C * R * R).sum(axis=1)
    b_num = ((1 - C) * B * B).sum(axis=1)
    return [(int(a), int(b)) for a, b in zip(r_num, b_num)]


def sweep_pairs(n: int, k: int, mode: str = "exhaustive", seed: int = 0, count: int = 1000,
                threads: int = 1, block: int = 4096):
    """Distinct achievable StayPairs, each with one witness colouring.

    Returns ``(dict StayPair -> witness bitstring, colourings examined)``.
    Witnesses are the first colouring (in enumeration order) reaching the
    pair, so the result does not depend on ``threads``.
    """
    N = n ** k
    if N % 2:
        raise ValueError("n^k must be even for a balanced colouring")
    if mode == "exhaustive":
        if comb(N, N // 2) > EXHAUSTIVE_LIMIT:
            raise ValueError(f"C({N}, {N // 2}) colourings exceed the exhaustive limit")
        reds = list(combinations(range(N), N // 2))
    elif mode == "random":
        rng = random.Random(seed)
        reds = [tuple(sorted(rng.sample(range(N), N // 2))) for _ in range(count)]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    blocks = [(n, k, reds[i:i + block]) for i in range(0, len(reds), block)]
    nums = [x for part in pmap(_pairs_for_block, blocks, threads) for x in part]
    denom = (N // 2) * (2 * k) ** 2
    found: dict[StayPair, str] = {}
    for red, (a, b) in zip(reds, nums):
        sp = StayPair(Fraction(a, denom), Fraction(b, denom))
        if sp not in found:
            found[sp] = TorusColouring(n, k, frozenset(red)).bits()
    return found, len(reds)


# -- certificates ----------------------------------------------------------------------

def certify_sweep(n: int, k: int, found: dict, examined: int, hull: str,
                  runtime_ms: int = 0) -> Certificate:
    """Verification certificate: every witnessed pair and its hull verdict."""
    rows = []
    outside = 0
    for sp in sorted(found, key=lambda s: (s.p_R, s.p_B)):
        inside = hull_k2_membership(sp) if hull == "k2" else hull_conjecture_membership(sp, k)
        outside += not inside
        rows.append({"p_R": str(sp.p_R), "p_B": str(sp.p_B), "colouring": found[sp],
                     "inside": inside})
    return Certificate("torus_walks.sweep", {"n": n, "k": k, "hull": hull}, "verification",
                       str(outside), rows,
                       {"runtime_ms": runtime_ms, "colourings_examined": examined,
                        "distinct_pairs": len(found)})


@register_verifier("torus_walks.sweep")
def _verify_sweep(cert: Certificate) -> None:
    n, k = cert.p_int("n"), cert.p_int("k")
    hull = cert.params["hull"]
    pts = K2_VERTICES if hull == "k2" else conjectured_vertices(k)
    outside = 0
    for row in cert.witness:
        c = TorusColouring.from_bits(n, k, row["colouring"])
        sp = stay_pair_walks(c)
        check(str(sp.p_R) == row["p_R"] and str(sp.p_B) == row["p_B"],
              f"recomputed pair differs for colouring {row['colouring']}")
        inside = _inside_by_lp(sp.as_tuple(), pts)
        check(inside == row["inside"], f"hull verdict differs for {row['colouring']}")
        outside += not inside
    check(str(outside) == cert.value, "count of outside pairs differs from value")


def _inside_by_lp(p: Point, vertices: list[Point]) -> bool:
    """Independent membership test: p is a convex combination of some <= 3 vertices.

    By Caratheodory a point of a planar hull lies in a triangle (or on a
    segment) spanned by hull points; solve each small system exactly.
    """
    vs = sorted(set(vertices))
    if p in vs:
        return True
    for a, b in combinations(vs, 2):
        if _cross(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) \
                and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]):
            return True
    for a, b, c in combinations(vs, 3):
        det = _cross(a, b, c)
        if det == 0:
            continue
        l1 = _cross(b, c, p) / det
        l2 = _cross(c, a, p) / det
        l3 = 1 - l1 - l2
        if l1 >= 0 and l2 >= 0 and l3 >= 0:
            return True
    return False
