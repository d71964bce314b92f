"""Colour changes along walks and geodesics between antipodal vertices of Q_n.

An edge colouring is an int8 table ``col[v, i]``: the colour of the edge
from v in direction i (bit i), stored at both endpoints.  Walks may
revisit vertices; a geodesic uses every direction exactly once.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import ceil, isqrt

import numpy as np

from .core.certificate import Certificate, check, register_verifier


class InternalInconsistency(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class EdgeColouring:
    n: int
    col: np.ndarray  # shape (2^n, n)

    @classmethod
    def from_function(cls, n: int, f) -> "EdgeColouring":
        """``f(lower, i)`` gives the colour of the edge {lower, lower | 1<<i}."""
        col = np.zeros((1 << n, n), dtype=np.int8)
        for v in range(1 << n):
            for i in range(n):
                if not (v >> i) & 1:
                    c = f(v, i)
                    col[v, i] = col[v | (1 << i), i] = c
        return cls(n, col)

    @classmethod
    def from_triples(cls, n: int, triples) -> "EdgeColouring":
        table = {}
        for v, i, c in triples:
            if not (0 <= v < 1 << n and 0 <= i < n) or (v >> i) & 1:
                raise ValueError(f"({v}, {i}) is not a lower endpoint and direction")
            if (v, i) in table:
                raise ValueError(f"edge ({v}, {i}) coloured twice")
            table[(v, i)] = c
        if n and len(table) != n << (n - 1):
            raise ValueError("colouring is not total")
        return cls.from_function(n, lambda v, i: table[(v, i)])

    def colour(self, v: int, i: int) -> int:
        return int(self.col[v, i])

    def colours(self) -> list[int]:
        return sorted(set(self.col.flatten().tolist())) if self.n else []

    def triples(self) -> list[list[int]]:
        return [[v, i, int(self.col[v, i])] for v in range(1 << self.n) for i in range(self.n)
                if not (v >> i) & 1]

    def swapped(self) -> "EdgeColouring":
        """Exchange colours 0 and 1."""
        return EdgeColouring(self.n, (1 - self.col).astype(np.int8))


def monochromatic(n: int) -> EdgeColouring:
    return EdgeColouring(n, np.zeros((1 << n, n), dtype=np.int8))


def layered(n: int, w: int = 1) -> EdgeColouring:
    """Edge between weights j and j+1 gets colour floor(j / w) mod 2."""
    if w < 1:
        raise ValueError("band width must be positive")
    return EdgeColouring.from_function(n, lambda v, i: (bin(v).count("1") // w) % 2)


def direction_split(n: int) -> EdgeColouring:
    """Colour 0 on directions 1..floor(n/2), colour 1 on the rest."""
    return EdgeColouring.from_function(n, lambda v, i: 0 if 2 * (i + 1) <= n else 1)


def direction_partition(n: int, classes: int) -> EdgeColouring:
    """Directions split into ``classes`` contiguous blocks, one colour each."""
    if not 1 <= classes <= max(n, 1):
        raise ValueError("need 1 <= classes <= n")
    return EdgeColouring.from_function(n, lambda v, i: i * classes // n)


def random_colouring(n: int, colours: int = 2, seed: int = 0) -> EdgeColouring:
    rng = random.Random(seed)
    return EdgeColouring.from_function(n, lambda v, i: rng.randrange(colours))


def antipodal_edge(v: int, i: int, n: int) -> tuple[int, int]:
    """Lower endpoint and direction of the image of edge (v, i) under v -> v-bar."""
    return ((~v) & ((1 << n) - 1)) & ~(1 << i), i


def random_antipodal(n: int, seed: int = 0) -> EdgeColouring:
    """Pick one edge of every antipodal pair uniformly; it gets colour 0, its partner 1."""
    rng = random.Random(seed)
    table = {}
    for v in range(1 << n):
        for i in range(n):
            if (v >> i) & 1 or (v, i) in table:
                continue
            w = antipodal_edge(v, i, n)
            c = rng.randrange(2)
            table[(v, i)], table[w] = c, 1 - c
    return EdgeColouring.from_function(n, lambda v, i: table[(v, i)])


def is_antipodal_colouring(c: EdgeColouring) -> bool:
    if len(c.colours()) > 2:
        raise ValueError("antipodal colourings use two colours")
    for v in range(1 << c.n):
        for i in range(c.n):
            if not (v >> i) & 1:
                w, _ = antipodal_edge(v, i, c.n)
                if c.col[v, i] == c.col[w, i]:
                    return False
    return True


# -- walks ----------------------------------------------------------------------

def min_changes_path(c: EdgeColouring, v: int) -> int:
    """Fewest colour changes over walks v -> v-bar (0-1 BFS on (vertex, last colour))."""
    n = c.n
    if n == 0:
        return 0
    target = v ^ ((1 << n) - 1)
    ncol = max(c.colours()) + 1
    dist = {}
    dq = deque()
    for i in range(n):
        s = (v ^ (1 << i), int(c.col[v, i]))
        if dist.get(s, 1) > 0:
            dist[s] = 0
            dq.appendleft((0, s))
    while dq:
        d, (u, last) = dq.popleft()
        if dist[(u, last)] < d:
            continue
        if u == target:
            return d
        for i in range(n):
            col = int(c.col[u, i])
            nd = d + (col != last)
            s = (u ^ (1 << i), col)
            if nd < dist.get(s, ncol * (1 << n) + 1):
                dist[s] = nd
                if nd == d:
                    dq.appendleft((nd, s))
                else:
                    dq.append((nd, s))
    raise InternalInconsistency("antipode unreachable in a connected cube")


def _component_graph(c: EdgeColouring):
    """Monochromatic components and, per vertex, the components through it."""
    n, N = c.n, 1 << c.n
    comp_of = {}  # (vertex, colour) -> component id
    comps = 0
    for v in range(N):
        for i in range(n):
            col = int(c.col[v, i])
            if (v, col) in comp_of:
                continue
            comp_of[(v, col)] = comps
            stack = [v]
            while stack:
                u = stack.pop()
                for j in range(n):
                    if c.col[u, j] == col:
                        w = u ^ (1 << j)
                        if (w, col) not in comp_of:
                            comp_of[(w, col)] = comps
                            stack.append(w)
            comps += 1
    at = [[] for _ in range(N)]
    for (u, _), k in comp_of.items():
        at[u].append(k)
    nbrs = [set() for _ in range(comps)]
    for ks in at:
        for a in ks:
            for b in ks:
                if a != b:
                    nbrs[a].add(b)
    return at, [sorted(s) for s in nbrs]


def per_vertex_changes(c: EdgeColouring) -> list[int]:
    """min_changes_path for every v, via BFS on the monochromatic-component graph.

    A walk is a sequence of monochromatic components, consecutive ones
    sharing a vertex, so the change count is the component-graph distance.
    """
    n = c.n
    if n == 0:
        return [0]
    at, nbrs = _component_graph(c)
    full = (1 << n) - 1
    out = [0] * (1 << n)
    for v in range(1 << n):
        if v < v ^ full:
            out[v] = out[v ^ full] = _bfs_between(at[v], set(at[v ^ full]), nbrs)
    return out


def average_min_changes(c: EdgeColouring) -> Fraction:
    """Exact mean over v of the fewest colour changes on a walk v -> v-bar."""
    if c.n > 14:
        raise ValueError("average is limited to n <= 14")
    return Fraction(sum(per_vertex_changes(c)), 1 << c.n)


def _bfs_between(sources, targets: set, nbrs) -> int:
    dist = {s: 0 for s in sources}
    dq = deque(sources)
    while dq:
        a = dq.popleft()
        if a in targets:
            return dist[a]
        for b in nbrs[a]:
            if b not in dist:
                dist[b] = dist[a] + 1
                dq.append(b)
    raise InternalInconsistency("component graph is disconnected")


def min_changes_walks_oracle(c: EdgeColouring, v: int, max_len: int) -> int | None:
    """Reference: enumerate every walk of length <= max_len from v."""
    target = v ^ ((1 << c.n) - 1)
    best = None
    # frontier: (vertex, last colour) -> fewest changes so far at this length
    layer = {(v, -1): 0}
    for _ in range(max_len):
        nxt = {}
        for (u, last), d in layer.items():
            for i in range(c.n):
                col = int(c.col[u, i])
                nd = d + (last != -1 and col != last)
                s = (u ^ (1 << i), col)
                if nd < nxt.get(s, 1 << 30):
                    nxt[s] = nd
        layer = nxt
        for (u, _), d in layer.items():
            if u == target and (best is None or d < best):
                best = d
    return best


# -- geodesics ----------------------------------------------------------------------

def _geodesic_table(c: EdgeColouring, v: int) -> np.ndarray:
    """dp[S, col]: fewest changes reaching v ^ S using directions S, last colour col."""
    n = c.n
    ncol = max(c.colours()) + 1
    INF = np.iinfo(np.int32).max // 2
    dp = np.full((1 << n, ncol), INF, dtype=np.int32)
    dp[0, :] = 0
    subsets = np.arange(1 << n)
    pop = np.array([bin(s).count("1") for s in range(1 << n)])
    for L in range(n):
        layer = subsets[pop == L]
        best_any = dp[layer].min(axis=1)
        for i in range(n):
            sel = (layer >> i) & 1 == 0
            S = layer[sel]
            col = c.col[v ^ S, i].astype(np.int64)
            stay = dp[S, col]
            cand = np.minimum(stay, best_any[sel] + 1)
            T = S | (1 << i)
            dp[T, col] = np.minimum(dp[T, col], cand)
    return dp


def min_changes_geodesic(c: EdgeColouring, v: int) -> int:
    if c.n == 0:
        return 0
    if c.n > 20:
        raise ValueError("geodesic DP is limited to n <= 20")
    return int(_geodesic_table(c, v)[(1 << c.n) - 1].min())


def best_geodesic(c: EdgeColouring, v: int) -> tuple[int, list[int]]:
    """(changes, direction order) of an optimal geodesic from v."""
    n = c.n
    if n == 0:
        return 0, []
    dp = _geodesic_table(c, v)
    S = (1 << n) - 1
    last = int(np.argmin(dp[S]))
    order = []
    while S:
        cur = int(dp[S, last])
        step = None
        for i in range(n):
            if not (S >> i) & 1:
                continue
            P = S ^ (1 << i)
            if c.col[v ^ P, i] != last:
                continue
            if P == 0:
                if cur == 0:
                    step = (i, last)
            else:
                for p in range(dp.shape[1]):
                    if int(dp[P, p]) + (p != last) == cur:
                        step = (i, p)
                        break
            if step:
                break
        if step is None:
            raise InternalInconsistency("geodesic backtrack failed")
        order.append(step[0])
        S ^= 1 << step[0]
        last = step[1]
    order.reverse()
    return int(_changes_along(c, v, order)), order


def _changes_along(c: EdgeColouring, v: int, order) -> int:
    cols = []
    u = v
    for i in order:
        cols.append(int(c.col[u, i]))
        u ^= 1 << i
    return sum(a != b for a, b in zip(cols, cols[1:]))


def geodesic_profile(c: EdgeColouring) -> list[int]:
    """min_changes_geodesic for every start vertex at once.

    Tracks endpoints rather than starts: dp[S][u, col] is the fewest
    changes over geodesics with direction set S ending at u.
    """
    n = c.n
    if n == 0:
        return [0]
    if n > 14:
        raise ValueError("all-vertex geodesic DP is limited to n <= 14")
    N = 1 << n
    ncol = max(c.colours()) + 1
    INF = np.iinfo(np.int32).max // 2
    u = np.arange(N)
    layer = {0: np.zeros((N, ncol), dtype=np.int32)}
    for _ in range(n):
        nxt = {}
        for S, dp in layer.items():
            best_any = dp.min(axis=1)
            for i in range(n):
                if (S >> i) & 1:
                    continue
                col = c.col[:, i].astype(np.int64)
                cand = np.minimum(dp[u, col], best_any + 1)
                T = S | (1 << i)
                if T not in nxt:
                    nxt[T] = np.full((N, ncol), INF, dtype=np.int32)
                tgt = nxt[T]
                w = u ^ (1 << i)
                tgt[w, col] = np.minimum(tgt[w, col], cand)
        layer = nxt
    final = layer[N - 1].min(axis=1)
    # the geodesic from v ends at v-bar
    return [int(final[v ^ (N - 1)]) for v in range(N)]


def geodesic_oracle(c: EdgeColouring, v: int) -> int:
    """Reference: all n! direction orders."""
    return min(_changes_along(c, v, order) for order in permutations(range(c.n))) if c.n else 0


def _swap_blocks(x: int, i: int, zero_mask: int) -> int:
    """Move bit at position u to position u ^ (1 << i)."""
    s = 1 << i
    return ((x & zero_mask) << s) | ((x >> s) & zero_mask)


def monochromatic_geodesic_length(c: EdgeColouring) -> int:
    """Longest monochromatic geodesic segment, starting anywhere.

    Per colour, ``ends[S]`` is the set (as a 2^n-bit int) of endpoints of
    monochromatic segments with direction set S; layers grow one direction
    at a time until empty.
    """
    n = c.n
    if n == 0:
        return 0
    if n > 16:
        raise ValueError("monochromatic geodesic search is limited to n <= 16")
    N = 1 << n
    zero = [sum(1 << u for u in range(N) if not (u >> i) & 1) for i in range(n)]
    best = 0
    for colour in c.colours():
        has = [sum(1 << u for u in range(N) if c.col[u, i] == colour) for i in range(n)]
        layer = {0: (1 << N) - 1}
        length = 0
        while layer:
            nxt: dict[int, int] = {}
            for S, ends in layer.items():
                for i in range(n):
                    if (S >> i) & 1:
                        continue
                    moved = _swap_blocks(ends & has[i], i, zero[i])
                    if moved:
                        T = S | (1 << i)
                        nxt[T] = nxt.get(T, 0) | moved
            if nxt:
                length += 1
            layer = nxt
        best = max(best, length)
    if len(c.colours()) <= 2 and best < ceil(n / 2):
        raise InternalInconsistency(
            f"monochromatic geodesic of length {best} < ceil(n/2) contradicts a known theorem")
    return best


def k_colour_conjecture_check(c: EdgeColouring, k: int):
    """(fewest changes over all antipodal geodesics, <= k, (v, direction order))."""
    if len(c.colours()) > k + 1:
        raise ValueError(f"colouring uses more than {k + 1} colours")
    if c.n > 14:
        raise ValueError("conjecture check is limited to n <= 14")
    prof = geodesic_profile(c)
    v = min(range(len(prof)), key=lambda x: (prof[x], x))
    changes, order = best_geodesic(c, v)
    return prof[v], prof[v] <= k, (v, order)


def _ceil_sqrt(n: int) -> int:
    r = isqrt(n)
    return r if r * r == n else r + 1


def layered_trend(ns, w=None) -> list[tuple[int, int, Fraction, Fraction, int]]:
    """(n, band width, mean walk changes, mean geodesic changes, max geodesic changes)."""
    rows = []
    for n in ns:
        width = w or _ceil_sqrt(n)
        c = layered(n, width)
        prof = geodesic_profile(c)
        rows.append((n, width, average_min_changes(c), Fraction(sum(prof), len(prof)), max(prof)))
    return rows


# -- certificates --------------------------------------------------------------------

def certify_geodesic_check(c: EdgeColouring, k: int, runtime_ms: int = 0,
                           label: str = "") -> Certificate:
    """Verification certificate for the (k+1)-colour geodesic check.

    The witness holds the colouring, the minimum-change geodesic and the
    full per-vertex profile; the verifier recomputes the profile by
    brute force over direction orders when n <= 7.
    """
    best, ok, (v, order) = k_colour_conjecture_check(c, k)
    return Certificate("antipodal.geodesic_check", {"n": c.n, "k": k, "label": label},
                       "verification", str(best),
                       {"colouring": c.triples(), "start": v, "order": order,
                        "profile": geodesic_profile(c)},
                       {"runtime_ms": runtime_ms, "holds": ok})


def certify_average(c: EdgeColouring, runtime_ms: int = 0, label: str = "") -> Certificate:
    per_v = [min_changes_path(c, v) for v in range(1 << c.n)]
    avg = Fraction(sum(per_v), 1 << c.n)
    return Certificate("antipodal.average", {"n": c.n, "label": label}, "exact", str(avg),
                       {"colouring": c.triples(), "per_vertex": per_v},
                       {"runtime_ms": runtime_ms})


@register_verifier("antipodal.geodesic_check")
def _verify_geodesic(cert: Certificate) -> None:
    n, k = cert.p_int("n"), cert.p_int("k")
    c = EdgeColouring.from_triples(n, cert.witness["colouring"])
    check(len(c.colours()) <= k + 1, "colouring uses too many colours")
    order = cert.witness["order"]
    check(sorted(order) == list(range(n)), "order is not a permutation of the directions")
    v = cert.witness["start"]
    check(str(_changes_along(c, v, order)) == cert.value, "witness geodesic changes differ")
    prof = cert.witness["profile"]
    check(len(prof) == 1 << n, "profile length")
    check(str(min(prof)) == cert.value, "value is not the profile minimum")
    starts = range(1 << n) if n <= 7 else [v]
    for u in starts:
        check(geodesic_oracle(c, u) == prof[u] if n <= 7 else
              min_changes_geodesic(c, u) == prof[u],
              f"profile entry for vertex {u} is wrong")


@register_verifier("antipodal.average")
def _verify_average(cert: Certificate) -> None:
    n = cert.p_int("n")
    c = EdgeColouring.from_triples(n, cert.witness["colouring"])
    per_v = cert.witness["per_vertex"]
    check(len(per_v) == 1 << n, "per-vertex list length")
    # independent route: component-graph distances, not the state BFS
    got = per_vertex_changes(c)
    for v, d in enumerate(per_v):
        check(got[v] == d, f"vertex {v}: recorded {d}, recomputed {got[v]}")
    check(str(Fraction(sum(per_v), 1 << n)) == cert.value, "average differs from value")
