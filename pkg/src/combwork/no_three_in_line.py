"""No-three-in-line point sets in the grid [n]^2 (1-based coordinates).

Collinearity is decided over the rationals with integer cross products;
no floating point anywhere.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import gcd, isqrt

from .core.certificate import Certificate, check, register_verifier

Point = tuple[int, int]


def collinear(p: Point, q: Point, r: Point) -> bool:
    return (q[1] - p[1]) * (r[0] - p[0]) == (r[1] - p[1]) * (q[0] - p[0])


def _direction(p: Point, q: Point) -> tuple[int, int]:
    dx, dy = q[0] - p[0], q[1] - p[1]
    g = gcd(dx, dy)
    dx, dy = dx // g, dy // g
    if dx < 0 or (dx == 0 and dy < 0):
        dx, dy = -dx, -dy
    return dx, dy


def verify_no3(S) -> tuple[bool, tuple[Point, Point, Point] | None]:
    """O(m^2) check: two points seen from p in the same reduced direction."""
    pts = sorted(set(S))
    for i, p in enumerate(pts):
        seen: dict[tuple[int, int], Point] = {}
        for q in pts[i + 1:]:
            d = _direction(p, q)
            if d in seen:
                return False, (p, seen[d], q)
            seen[d] = q
    return True, None


def verify_no3_cubic(S) -> bool:
    """Reference triple loop over cross products."""
    return not any(collinear(p, q, r) for p, q, r in combinations(sorted(set(S)), 3))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % f for f in range(2, isqrt(n) + 1))


def modular_parabola(p: int) -> list[Point]:
    """{(i, i^2 mod p)} for 0 <= i < p, shifted into [p]^2."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return [(i + 1, (i * i) % p + 1) for i in range(p)]


def scan_order(n: int, order: str = "row-major", seed: int = 0) -> list[Point]:
    pts = [(x, y) for y in range(1, n + 1) for x in range(1, n + 1)]
    if order == "row-major":
        return pts
    if order == "spiral":
        # shells max(x, y) = s outward from the corner, so every prefix
        # [s]^2 is scanned before anything outside it
        return sorted(pts, key=lambda p: (max(p), p[1] if p[0] == max(p) else 2 * n - p[0]))
    if order == "random":
        rng = random.Random(seed)
        rng.shuffle(pts)
        return pts
    raise ValueError(f"unknown scan order {order!r}")


def greedy_extend(S, n: int, order: str = "row-major", seed: int = 0) -> list[Point]:
    """Add grid points in scan order whenever no collinear triple is created.

    Each accepted point blocks every grid point on the lines through it
    and the earlier points, so a candidate test is one set lookup.
    """
    S = list(dict.fromkeys(S))
    ok, _ = verify_no3(S)
    if not ok:
        raise ValueError("starting set already has three collinear points")
    blocked: set[Point] = set(S)
    chosen: list[Point] = []

    def block_line(p: Point, q: Point) -> None:
        dx, dy = _direction(p, q)
        for sgn in (1, -1):
            x, y = p
            while 1 <= x <= n and 1 <= y <= n:
                blocked.add((x, y))
                x += sgn * dx
                y += sgn * dy

    for i, p in enumerate(S):
        for q in S[:i]:
            block_line(p, q)
        chosen.append(p)
    for p in scan_order(n, order, seed):
        if p in blocked:
            continue
        for q in chosen:
            block_line(p, q)
        blocked.add(p)
        chosen.append(p)
    return chosen


def density_profile(S, N: int) -> list[tuple[int, Fraction]]:
    """|S & [n]^2| / n for n = 1..N."""
    counts = [0] * (N + 1)
    for x, y in S:
        m = max(x, y)
        if 1 <= min(x, y) and m <= N:
            counts[m] += 1
    out, run = [], 0
    for n in range(1, N + 1):
        run += counts[n]
        out.append((n, Fraction(run, n)))
    return out


def row_column_ok(S) -> bool:
    from collections import Counter
    rows = Counter(y for _, y in S)
    cols = Counter(x for x, _ in S)
    return max(rows.values(), default=0) <= 2 and max(cols.values(), default=0) <= 2


def to_csv(S) -> str:
    return "".join(f"{x},{y}\n" for x, y in sorted(S))


def from_csv(text: str) -> list[Point]:
    pts = []
    for line in text.splitlines():
        line = line.strip()
        if line:
            x, y = line.split(",")
            pts.append((int(x), int(y)))
    return pts


def certify(S, label: str, n: int, runtime_ms: int = 0, **params) -> Certificate:
    ok, _ = verify_no3(S)
    return Certificate("no_three_in_line.set", {"source": label, "n": n, **params},
                       "construction" if ok else "verification", str(len(set(S))),
                       [[x, y] for x, y in sorted(set(S))],
                       {"runtime_ms": runtime_ms, "no_three_collinear": ok})


@register_verifier("no_three_in_line.set")
def _verify_set(cert: Certificate) -> None:
    n = cert.p_int("n")
    pts = [tuple(p) for p in cert.witness]
    check(all(len(p) == 2 and 1 <= p[0] <= n and 1 <= p[1] <= n for p in pts),
          "point outside the grid")
    check(len(set(pts)) == len(pts), "repeated points")
    check(str(len(pts)) == cert.value, "size differs from value")
    ok = verify_no3_cubic(pts)
    if cert.kind == "construction":
        check(ok, "three collinear points")
        check(row_column_ok(pts), "a row or column holds three points")
    if cert.params.get("source") == "modular_parabola":
        p = cert.p_int("p")
        check(sorted(pts) == modular_parabola(p), "points differ from the modular parabola")
