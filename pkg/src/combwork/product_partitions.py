"""Partitions and odd covers of E(K_n1) x E(K_n2) by products of complete bipartite graphs.

A side of a block is an unordered pair {X, Y} of disjoint non-empty
vertex sets; it covers the edges of K_{X,Y}.  A block covers the product
of its two sides' edge sets.  Vertices are 1-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from math import comb

from .core.budget import SearchBudget, Status
from .core.certificate import Certificate, check, register_verifier
from .core.exact_cover import ODD, PARTITION, exact_cover_min

Edge = tuple[int, int]


@dataclass(frozen=True, order=True)
class Side:
    X: tuple[int, ...]
    Y: tuple[int, ...]

    @classmethod
    def of(cls, X, Y) -> "Side":
        X, Y = tuple(sorted(set(X))), tuple(sorted(set(Y)))
        if not X or not Y or set(X) & set(Y):
            raise ValueError("bipartite sides must be non-empty and disjoint")
        # canonical orientation: X holds the smallest vertex
        return cls(X, Y) if X[0] < Y[0] else cls(Y, X)

    def edges(self) -> frozenset:
        return frozenset((min(x, y), max(x, y)) for x in self.X for y in self.Y)

    def __str__(self) -> str:
        return "({" + ",".join(map(str, self.X)) + "}|{" + ",".join(map(str, self.Y)) + "})"


@dataclass(frozen=True, order=True)
class ProductBlock:
    left: Side
    right: Side

    def elements(self) -> list[tuple[Edge, Edge]]:
        return [(e, f) for e in sorted(self.left.edges()) for f in sorted(self.right.edges())]

    def __str__(self) -> str:
        return f"{self.left}x{self.right}"

    @classmethod
    def parse(cls, text: str) -> "ProductBlock":
        m = re.fullmatch(r"\s*\(\{([\d,]*)\}\|\{([\d,]*)\}\)x\(\{([\d,]*)\}\|\{([\d,]*)\}\)\s*", text)
        if not m:
            raise ValueError(f"bad block {text!r}")
        sets = [tuple(int(x) for x in g.split(",") if x) for g in m.groups()]
        return cls(Side.of(sets[0], sets[1]), Side.of(sets[2], sets[3]))


@dataclass(frozen=True)
class ProductCover:
    n1: int
    n2: int
    blocks: tuple[ProductBlock, ...]

    def __post_init__(self):
        for b in self.blocks:
            if max(b.left.X + b.left.Y) > self.n1 or max(b.right.X + b.right.Y) > self.n2:
                raise ValueError(f"block {b} outside the vertex ranges")

    def __len__(self) -> int:
        return len(self.blocks)


def edges_of(n: int) -> list[Edge]:
    return list(combinations(range(1, n + 1), 2))


def universe(n1: int, n2: int) -> list[tuple[Edge, Edge]]:
    return [(e, f) for e in edges_of(n1) for f in edges_of(n2)]


def check_cover(c: ProductCover, mode: str = PARTITION):
    """(ok, first element whose count is wrong)."""
    counts = {x: 0 for x in universe(c.n1, c.n2)}
    for b in c.blocks:
        for x in b.elements():
            counts[x] += 1
    for x, k in counts.items():
        if (mode == PARTITION and k != 1) or (mode == ODD and k % 2 == 0):
            return False, x
    if mode not in (PARTITION, ODD):
        raise ValueError(f"unknown mode {mode!r}")
    return True, None


def stars(n: int) -> list[Side]:
    return [Side.of([j], range(j + 1, n + 1)) for j in range(1, n)]


def star_construction(n1: int, n2: int | None = None) -> ProductCover:
    """Products of the star decompositions of the two complete graphs."""
    n2 = n1 if n2 is None else n2
    if n1 < 2 or n2 < 2:
        raise ValueError("need at least two vertices on each side")
    return ProductCover(n1, n2, tuple(ProductBlock(a, b) for a in stars(n1) for b in stars(n2)))


def bipartite_sides(n: int) -> list[Side]:
    out = set()
    verts = range(1, n + 1)
    for size in range(2, n + 1):
        for U in combinations(verts, size):
            for r in range(1, size):
                for X in combinations(U, r):
                    out.add(Side.of(X, set(U) - set(X)))
    return sorted(out)


def _image(side: Side, perm: tuple[int, ...]) -> Side:
    return Side.of([perm[x - 1] for x in side.X], [perm[y - 1] for y in side.Y])


def _stabiliser(n: int) -> list[tuple[int, ...]]:
    """Permutations of [n] (one-line, 1-based) fixing the edge {1, 2} setwise."""
    return [p for p in permutations(range(1, n + 1)) if {p[0], p[1]} == {1, 2}]


TARGETS = {"g": (None, PARTITION), "h": (4, PARTITION), "g_tilde": (None, ODD)}
LIMITS = {"g": 4, "h": 5, "g_tilde": 3}


def exact_value(target: str, n: int, budget: SearchBudget | None = None):
    """Minimum partition (g, h) or odd cover (g_tilde).  Returns ``(value, cover, status)``.

    For h the first factor is K_4.  Partition searches branch first on
    the element ({1,2},{1,2}) using one block per orbit of the
    stabiliser of that element.
    """
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}")
    if n > LIMITS[target] or n < 2:
        raise ValueError(f"{target} is searched only for 2 <= n <= {LIMITS[target]}")
    first, mode = TARGETS[target]
    n1, n2 = (first or n), n
    U = universe(n1, n2)
    blocks = [ProductBlock(a, b) for a in bipartite_sides(n1) for b in bipartite_sides(n2)]
    elems = [b.elements() for b in blocks]
    root = None
    if mode == PARTITION:
        u0 = U[0]
        st1, st2 = _stabiliser(n1), _stabiliser(n2)
        seen, root = set(), []
        for j, b in enumerate(blocks):
            if u0 not in elems[j]:
                continue
            orbit = min((_image(b.left, p), _image(b.right, q)) for p in st1 for q in st2)
            if orbit not in seen:
                seen.add(orbit)
                root.append(j)
    res = exact_cover_min(U, elems, mode, budget, root_blocks=root)
    if res.value is None:
        return None, None, res.status
    cover = ProductCover(n1, n2, tuple(sorted(blocks[j] for j in res.extra["indices"])))
    return res.value, cover, res.status


def bound_table(ns) -> list[dict]:
    """Known bound formulas per n (leading terms for the asymptotic ones)."""
    rows = []
    for n in ns:
        rows.append({
            "n": n,
            "star_upper_g": (n - 1) ** 2,
            "odd_upper_g_tilde": (-(-n // 2) + 1) ** 2,
            "lower_g_leading": Fraction(n * n, 2),
            "upper_g_leading": Fraction(14 * n * n, 15),
            "lower_g_tilde_leading": Fraction(n * n, 6),
            "h_conjectured_leading": Fraction(12 * n, 5),
            "star_upper_h": 3 * (n - 1),
        })
    return rows


# -- certificates -------------------------------------------------------------------

MINIMALITY_LIMIT = 3_000_000


def _subsets_below(nblocks: int, value: int) -> int:
    return sum(comb(nblocks, j) for j in range(value))


def certify_cover(cover: ProductCover, mode: str, target: str | None = None,
                  status: Status = Status.EXACT, runtime_ms: int = 0) -> Certificate:
    """Star covers give construction certificates; search results give exact ones.

    A search result is labelled exact only when the verifier can redo the
    minimality proof by exhaustion; otherwise it is issued as a bound.
    """
    params = {"n1": cover.n1, "n2": cover.n2, "mode": mode}
    if target is None:
        kind = "construction"
    else:
        params["target"] = target
        nb = len(bipartite_sides(cover.n1)) * len(bipartite_sides(cover.n2))
        kind = ("exact" if status is Status.EXACT and _subsets_below(nb, len(cover)) <= MINIMALITY_LIMIT
                else "bound")
    return Certificate("product.cover", params, kind, str(len(cover)),
                       [str(b) for b in cover.blocks],
                       {"runtime_ms": runtime_ms, "search_status": status.value if target else None})


def _coverage(n1: int, n2: int, blocks) -> dict:
    counts = {}
    for e in combinations(range(1, n1 + 1), 2):
        for f in combinations(range(1, n2 + 1), 2):
            counts[(e, f)] = 0
    for (X1, Y1), (X2, Y2) in blocks:
        for e in ((min(x, y), max(x, y)) for x in X1 for y in Y1):
            for f in ((min(x, y), max(x, y)) for x in X2 for y in Y2):
                counts[(e, f)] += 1
    return counts


def _all_sides(n: int):
    verts = range(1, n + 1)
    out = []
    # ordered (X, Y) with min vertex in X, by brute force over 3-colourings
    for lab in product((0, 1, 2), repeat=n):
        X = tuple(v for v, t in zip(verts, lab) if t == 1)
        Y = tuple(v for v, t in zip(verts, lab) if t == 2)
        if X and Y and X[0] < Y[0]:
            out.append((X, Y))
    return out


@register_verifier("product.cover")
def _verify_cover(cert: Certificate) -> None:
    n1, n2 = cert.p_int("n1"), cert.p_int("n2")
    mode = cert.params["mode"]
    check(mode in (PARTITION, ODD), "unknown mode")
    blocks = []
    for text in cert.witness:
        m = re.fullmatch(r"\(\{([\d,]+)\}\|\{([\d,]+)\}\)x\(\{([\d,]+)\}\|\{([\d,]+)\}\)", text)
        check(m is not None, f"malformed block {text!r}")
        X1, Y1, X2, Y2 = (tuple(int(x) for x in g.split(",")) for g in m.groups())
        for X, Y, n in ((X1, Y1, n1), (X2, Y2, n2)):
            check(not set(X) & set(Y), f"block {text} has overlapping sides")
            check(all(1 <= v <= n for v in X + Y), f"block {text} leaves the vertex range")
        blocks.append(((X1, Y1), (X2, Y2)))
    check(str(len(blocks)) == cert.value, "block count differs from value")
    counts = _coverage(n1, n2, blocks)
    if mode == PARTITION:
        check(all(k == 1 for k in counts.values()), "some element is not covered exactly once")
        area = sum(len(X1) * len(Y1) * len(X2) * len(Y2) for (X1, Y1), (X2, Y2) in blocks)
        check(area == comb(n1, 2) * comb(n2, 2), "edge accounting identity fails")
    else:
        check(all(k % 2 == 1 for k in counts.values()), "some element is covered an even number of times")
    if cert.kind == "exact":
        cands = [(s, t) for s in _all_sides(n1) for t in _all_sides(n2)]
        check(_subsets_below(len(cands), len(blocks)) <= MINIMALITY_LIMIT,
              "minimality cannot be re-checked at this size")
        for j in range(len(blocks)):
            for sub in combinations(cands, j):
                cnt = _coverage(n1, n2, sub)
                good = (all(k == 1 for k in cnt.values()) if mode == PARTITION
                        else all(k % 2 == 1 for k in cnt.values()))
                check(not good, f"a cover with {j} blocks exists")
