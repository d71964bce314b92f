"""Induced-diamond saturation in P([n]) and greedy rainbow path covers.

Sets are bitmasks over [n] (element i is bit i-1).  An induced diamond is
four distinct members A, B, C, D with A inside B & C, B | C inside D and
B, C incomparable; distinctness already forces every containment to be
proper.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import ceil, log2

from .core.budget import BudgetClock, BudgetExhausted, SearchBudget, Status
from .core.certificate import Certificate, check, register_verifier


@dataclass(frozen=True)
class SetFamily:
    n: int
    mask: int  # bit S set when subset S is a member

    @classmethod
    def of(cls, n: int, sets) -> "SetFamily":
        m = 0
        for s in sets:
            if not 0 <= s < 1 << n:
                raise ValueError(f"set {s} outside P([{n}])")
            m |= 1 << s
        return cls(n, m)

    def members(self) -> list[int]:
        return [s for s in range(1 << self.n) if (self.mask >> s) & 1]

    def __contains__(self, s: int) -> bool:
        return bool((self.mask >> s) & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def add(self, s: int) -> "SetFamily":
        return SetFamily(self.n, self.mask | (1 << s))


def set_str(s: int, n: int) -> str:
    return "".join(str((s >> i) & 1) for i in range(n))


def parse_set(text: str) -> int:
    return sum(1 << i for i, ch in enumerate(text) if ch == "1")


def _sub(a: int, b: int) -> bool:
    return a & ~b == 0


def _closures(F: SetFamily):
    """below[X]: some member inside X (or -1); above[X]: some member containing X."""
    size = 1 << F.n
    below = [-1] * size
    for X in range(size):
        if X in F:
            below[X] = X
            continue
        x = X
        while x:
            low = x & -x
            x ^= low
            if below[X ^ low] >= 0:
                below[X] = below[X ^ low]
                break
    above = [-1] * size
    full = size - 1
    for X in range(full, -1, -1):
        if X in F:
            above[X] = X
            continue
        x = full & ~X
        while x:
            low = x & -x
            x ^= low
            if above[X | low] >= 0:
                above[X] = above[X | low]
                break
    return below, above


def contains_induced_diamond(F: SetFamily):
    """(found, (A, B, C, D)) using subset/superset closure tables."""
    below, above = _closures(F)
    ms = F.members()
    for B, C in combinations(ms, 2):
        if _sub(B, C) or _sub(C, B):
            continue
        A, D = below[B & C], above[B | C]
        if A >= 0 and D >= 0:
            return True, (A, B, C, D)
    return False, None


def diamond_quadruple_oracle(F: SetFamily) -> bool:
    """Reference: every ordered quadruple of distinct members."""
    ms = F.members()
    for A, B, C, D in permutations(ms, 4):
        if (_sub(A, B & C) and _sub(B | C, D)
                and not _sub(B, C) and not _sub(C, B)):
            return True
    return False


def is_diamond_saturated(F: SetFamily):
    """(saturated, a non-member that can be added without creating a diamond)."""
    if contains_induced_diamond(F)[0]:
        raise ValueError("family already contains an induced diamond")
    for S in range(1 << F.n):
        if S not in F and not contains_induced_diamond(F.add(S))[0]:
            return False, S
    return True, None


def singletons_plus_empty(n: int) -> SetFamily:
    return SetFamily.of(n, [0] + [1 << i for i in range(n)])


def full_chain(n: int) -> SetFamily:
    return SetFamily.of(n, [(1 << i) - 1 for i in range(n + 1)])


def min_saturated(n: int, budget: SearchBudget | None = None):
    """Smallest diamond-saturated family, by increasing size.

    Returns ``(size, family, status)``.  On budget exhaustion the size is
    an upper bound witnessed by the smaller of the two known saturated
    families of size n + 1 (whichever verifies).
    """
    if n < 1:
        raise ValueError("n must be positive")
    clock = (budget or SearchBudget()).start()
    universe = range(1 << n)
    try:
        for size in range(1, (1 << n) + 1):
            for combo in combinations(universe, size):
                clock.tick()
                F = SetFamily.of(n, combo)
                if contains_induced_diamond(F)[0]:
                    continue
                if is_diamond_saturated(F)[0]:
                    return size, F, Status.EXACT
    except BudgetExhausted:
        for F in (singletons_plus_empty(n), full_chain(n)):
            if not contains_induced_diamond(F)[0] and is_diamond_saturated(F)[0]:
                return len(F), F, Status.BOUND
        raise
    raise RuntimeError("P([n]) always contains a saturated family")


# -- rainbow path covers ----------------------------------------------------------------

@dataclass(frozen=True)
class ProperEdgeColouring:
    n: int
    colour: dict  # (u, v) with u < v  ->  colour id

    @classmethod
    def of(cls, n: int, coloured_edges) -> "ProperEdgeColouring":
        col = {}
        for u, v, c in coloured_edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"bad edge ({u}, {v})")
            e = (min(u, v), max(u, v))
            if e in col:
                raise ValueError(f"edge {e} listed twice")
            col[e] = c
        seen = {}
        for (u, v), c in col.items():
            for x in (u, v):
                if (x, c) in seen:
                    raise ValueError(f"colour {c} repeats at vertex {x}")
                seen[(x, c)] = True
        return cls(n, col)

    def triples(self) -> list[list[int]]:
        return [[u, v, c] for (u, v), c in sorted(self.colour.items())]


def greedy_proper_colouring(n: int, edges) -> ProperEdgeColouring:
    """First-fit proper edge colouring in edge order."""
    used: dict[int, set] = {v: set() for v in range(n)}
    out = []
    for u, v in edges:
        c = 0
        while c in used[u] or c in used[v]:
            c += 1
        used[u].add(c)
        used[v].add(c)
        out.append((u, v, c))
    return ProperEdgeColouring.of(n, out)


EXACT_LIMIT = 12


def longest_rainbow_path(n: int, colour: dict, remaining: set, clock: BudgetClock | None = None):
    """Longest rainbow path in ``remaining``, lexicographically least on ties.

    Depth-first search visits vertex sequences in lexicographic order, so
    the first path found at the maximum length is the least one.
    """
    nbrs = {v: [] for v in range(n)}
    for u, v in sorted(remaining):
        nbrs[u].append(v)
        nbrs[v].append(u)
    for v in nbrs:
        nbrs[v].sort()
    ceiling = min(n - 1, len({colour[e] for e in remaining}), len(remaining))
    best: list[int] = []
    path: list[int] = []
    used_colours: set = set()
    on_path: set = set()

    class Done(Exception):
        pass

    def dfs(v: int) -> None:
        if clock is not None:
            clock.tick()
        for w in nbrs[v]:
            if w in on_path:
                continue
            c = colour[(min(v, w), max(v, w))]
            if c in used_colours:
                continue
            path.append(w)
            on_path.add(w)
            used_colours.add(c)
            if len(path) - 1 > len(best) - 1:
                best[:] = path
                if len(best) - 1 == ceiling:
                    raise Done
            dfs(w)
            path.pop()
            on_path.discard(w)
            used_colours.discard(c)

    try:
        for s in range(n):
            if not nbrs[s]:
                continue
            path[:] = [s]
            on_path.clear()
            on_path.add(s)
            used_colours.clear()
            dfs(s)
    except Done:
        pass
    return best


def greedy_rainbow_cover(c: ProperEdgeColouring, heuristic_nodes: int = 200_000):
    """Repeatedly remove a longest rainbow path.  Returns ``(paths, exact)``.

    For n > 12 each path search is capped at ``heuristic_nodes`` nodes and
    the best path found is taken; ``exact`` reports whether every step was
    a true longest path.
    """
    remaining = set(c.colour)
    paths = []
    exact = c.n <= EXACT_LIMIT
    while remaining:
        clock = None if exact else SearchBudget(time_limit=1e9, node_limit=heuristic_nodes).start()
        try:
            p = longest_rainbow_path(c.n, c.colour, remaining, clock)
        except BudgetExhausted:
            p = _last_best_fallback(c, remaining)
        for u, v in zip(p, p[1:]):
            remaining.discard((min(u, v), max(u, v)))
        paths.append(p)
    return paths, exact


def _last_best_fallback(c: ProperEdgeColouring, remaining: set) -> list[int]:
    u, v = min(remaining)
    return [u, v]


def is_rainbow_partition(c: ProperEdgeColouring, paths) -> bool:
    seen = set()
    for p in paths:
        if len(p) < 2 or len(set(p)) != len(p):
            return False
        cols = []
        for u, v in zip(p, p[1:]):
            e = (min(u, v), max(u, v))
            if e not in c.colour or e in seen:
                return False
            seen.add(e)
            cols.append(c.colour[e])
        if len(set(cols)) != len(cols):
            return False
    return seen == set(c.colour)


def nlogn_bound(n: int) -> int:
    return n * ceil(log2(n)) if n > 1 else 0


# -- certificates ----------------------------------------------------------------------------

def certify_min_saturated(n: int, size: int, F: SetFamily, status: Status,
                          runtime_ms: int = 0) -> Certificate:
    return Certificate("saturation.min_saturated", {"n": n},
                       "exact" if status is Status.EXACT else "bound", str(size),
                       sorted(set_str(s, n) for s in F.members()), {"runtime_ms": runtime_ms})


def certify_rainbow_cover(c: ProperEdgeColouring, paths, exact: bool,
                          runtime_ms: int = 0) -> Certificate:
    return Certificate("rainbow.cover", {"n": c.n, "mode": "exact" if exact else "heuristic"},
                       "construction", str(len(paths)),
                       {"edges": c.triples(), "paths": [list(p) for p in paths]},
                       {"runtime_ms": runtime_ms})


@register_verifier("saturation.min_saturated")
def _verify_min_saturated(cert: Certificate) -> None:
    n = cert.p_int("n")
    check(all(len(s) == n for s in cert.witness), "subset string of wrong length")
    sets = [parse_set(s) for s in cert.witness]
    check(len(set(sets)) == len(sets), "repeated sets")
    check(str(len(sets)) == cert.value, "size differs from value")
    F = SetFamily.of(n, sets)
    check(not diamond_quadruple_oracle(F), "family contains an induced diamond")
    for S in range(1 << n):
        if S not in F:
            check(diamond_quadruple_oracle(F.add(S)),
                  f"adding {set_str(S, n)} creates no diamond: not saturated")


@register_verifier("rainbow.cover")
def _verify_rainbow(cert: Certificate) -> None:
    n = cert.p_int("n")
    c = ProperEdgeColouring.of(n, [tuple(t) for t in cert.witness["edges"]])
    paths = cert.witness["paths"]
    check(str(len(paths)) == cert.value, "path count differs from value")
    check(is_rainbow_partition(c, paths), "paths are not a rainbow partition of the edges")
