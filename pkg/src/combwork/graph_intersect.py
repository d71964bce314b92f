"""H-intersecting and chromatic-intersecting families of graphs on [n].

A labelled graph is a bitmask over the C(n,2) vertex pairs in
lexicographic order.  Families are found by maximum clique on the
compatibility graph whose vertices are graphs containing a copy of H.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations

from .core.budget import SearchBudget, Status
from .core.certificate import Certificate, check, register_verifier
from .core.clique import max_clique


@lru_cache(maxsize=None)
def pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: i for i, p in enumerate(combinations(range(n), 2))}


@dataclass(frozen=True)
class LabeledGraph:
    n: int
    mask: int

    @classmethod
    def from_edges(cls, n: int, edges) -> "LabeledGraph":
        idx = pair_index(n)
        m = 0
        for u, v in edges:
            m |= 1 << idx[(min(u, v), max(u, v))]
        return cls(n, m)

    def edges(self) -> list[tuple[int, int]]:
        return [p for p, i in pair_index(self.n).items() if (self.mask >> i) & 1]

    def __and__(self, other: "LabeledGraph") -> "LabeledGraph":
        return LabeledGraph(self.n, self.mask & other.mask)

    def complement(self) -> "LabeledGraph":
        return LabeledGraph(self.n, self.mask ^ ((1 << len(pair_index(self.n))) - 1))

    def bitstring(self) -> str:
        return "".join(str((self.mask >> i) & 1) for i in range(len(pair_index(self.n))))


@dataclass(frozen=True)
class Pattern:
    """Unlabelled graph H on vertices 0..v-1."""

    v: int
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        """``"1-2,1-3,2-3"`` (1-based vertex labels)."""
        edges = []
        for tok in text.split(","):
            tok = tok.strip()
            if not tok:
                continue
            a, b = (int(x) - 1 for x in tok.split("-"))
            if a == b or min(a, b) < 0:
                raise ValueError(f"bad edge {tok!r}")
            edges.append((min(a, b), max(a, b)))
        if not edges:
            raise ValueError("pattern needs at least one edge")
        v = max(max(e) for e in edges) + 1
        return cls(v, tuple(sorted(set(edges))))

    def __str__(self) -> str:
        return ",".join(f"{a + 1}-{b + 1}" for a, b in self.edges)


EDGE = Pattern.parse("1-2")
P3 = Pattern.parse("1-2,2-3,3-4")
TRIANGLE = Pattern.parse("1-2,1-3,2-3")
K4 = Pattern.parse("1-2,1-3,1-4,2-3,2-4,3-4")


@lru_cache(maxsize=None)
def copies(n: int, H: Pattern) -> tuple[int, ...]:
    """Edge masks of all labelled copies of H in K_n."""
    if H.v > n:
        return ()
    idx = pair_index(n)
    out = set()
    for f in permutations(range(n), H.v):
        m = 0
        for a, b in H.edges:
            u, w = f[a], f[b]
            m |= 1 << idx[(min(u, w), max(u, w))]
        out.add(m)
    return tuple(sorted(out))


def contains_copy(G: LabeledGraph, H: Pattern) -> bool:
    return any(c & ~G.mask == 0 for c in copies(G.n, H))


def is_H_intersecting(F, H: Pattern):
    """(ok, offending ordered pair).  Pairs include G1 == G2."""
    F = list(F)
    for G1 in F:
        for G2 in F:
            if not contains_copy(G1 & G2, H):
                return False, (G1, G2)
    return True, None


def chromatic_number(G: LabeledGraph) -> int:
    """Exact chromatic number by backtracking (intended for n <= 8)."""
    n = G.n
    if n == 0:
        return 0
    nbrs = [set() for _ in range(n)]
    for u, v in G.edges():
        nbrs[u].add(v)
        nbrs[v].add(u)
    order = sorted(range(n), key=lambda v: -len(nbrs[v]))
    for k in range(1, n + 1):
        colour = [-1] * n

        def rec(i: int, used: int) -> bool:
            if i == n:
                return True
            v = order[i]
            # a new colour class only ever needs to be opened once
            for c in range(min(k, used + 1)):
                if all(colour[w] != c for w in nbrs[v]):
                    colour[v] = c
                    if rec(i + 1, max(used, c + 1)):
                        return True
                    colour[v] = -1
            return False

        if rec(0, 0):
            return k
    return n


def is_chromatic_intersecting(F, t: int) -> bool:
    if t < 1:
        raise ValueError("t must be positive")
    F = list(F)
    return all(chromatic_number(G1 & G2) >= t for G1 in F for G2 in F)


def trivial_family(n: int, H: Pattern) -> list[LabeledGraph]:
    """All graphs on [n] containing the copy of H on vertices 0..v-1."""
    base = LabeledGraph.from_edges(n, H.edges).mask
    total = len(pair_index(n))
    return [LabeledGraph(n, m) for m in range(1 << total) if m & base == base]


MAX_N = 5


def _clique_family(n: int, members: list[int], compatible_adj: list[int], budget):
    res = max_clique(compatible_adj, budget)
    fam = [LabeledGraph(n, members[i]) for i in res.witness]
    return res.value, fam, res.status


def exact_g(n: int, H: Pattern, budget: SearchBudget | None = None):
    """g_H(n) via maximum clique; returns ``(value, family, status)``."""
    if n > MAX_N:
        raise ValueError(f"n={n} exceeds {MAX_N} (compatibility graph too large)")
    cs = copies(n, H)
    total = len(pair_index(n))
    members = [m for m in range(1 << total) if any(c & ~m == 0 for c in cs)]
    pos = {m: i for i, m in enumerate(members)}
    holders = {}
    for c in cs:
        b = 0
        for m in members:
            if c & ~m == 0:
                b |= 1 << pos[m]
        holders[c] = b
    adj = []
    for i, m in enumerate(members):
        a = 0
        for c in cs:
            if c & ~m == 0:
                a |= holders[c]
        adj.append(a & ~(1 << i))
    return _clique_family(n, members, adj, budget)


def exact_chromatic_g(n: int, t: int, budget: SearchBudget | None = None):
    """Largest family on [n] with chi(G1 & G2) >= t for all pairs."""
    if n > 4:
        raise ValueError("exact chromatic-intersecting search is limited to n <= 4")
    total = len(pair_index(n))
    chi = {m: chromatic_number(LabeledGraph(n, m)) for m in range(1 << total)}
    members = [m for m in range(1 << total) if chi[m] >= t]
    adj = [0] * len(members)
    for i, j in combinations(range(len(members)), 2):
        if chi[members[i] & members[j]] >= t:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return _clique_family(n, members, adj, budget)


# -- certificates --------------------------------------------------------------------

def certify_g(n: int, H: Pattern, value: int, fam: list[LabeledGraph], status: Status,
              runtime_ms: int = 0) -> Certificate:
    return Certificate("graph_intersect.g", {"n": n, "H": str(H)},
                       "exact" if status is Status.EXACT else "bound", str(value),
                       sorted(G.bitstring() for G in fam), {"runtime_ms": runtime_ms})


def _brute_contains(n: int, gedges: set, H: Pattern) -> bool:
    for f in permutations(range(n), H.v):
        if all((min(f[a], f[b]), max(f[a], f[b])) in gedges for a, b in H.edges):
            return True
    return False


@register_verifier("graph_intersect.g")
def _verify_g(cert: Certificate) -> None:
    n = cert.p_int("n")
    H = Pattern.parse(cert.params["H"])
    pairs = list(combinations(range(n), 2))
    graphs = []
    for s in cert.witness:
        check(len(s) == len(pairs) and set(s) <= {"0", "1"}, f"bad graph string {s!r}")
        graphs.append({p for p, ch in zip(pairs, s) if ch == "1"})
    check(len(set(cert.witness)) == len(graphs), "repeated graphs")
    check(str(len(graphs)) == cert.value, "family size differs from value")
    for g1 in graphs:
        for g2 in graphs:
            check(_brute_contains(n, g1 & g2, H), "some pairwise intersection lacks a copy of H")
    check(len(graphs) <= 2 ** (len(pairs) - 1), "family exceeds the complement bound")
