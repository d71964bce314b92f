"""Maximum clique by branch and bound with greedy-colouring bounds.

Vertices are ``0..n-1`` and the graph is given as a list of neighbour
bitmasks (Python ints), which keeps candidate-set intersection cheap.
This is the Tomita-style MCQ scheme: candidates are greedily coloured,
and a branch is cut as soon as ``|current| + colour(v) <= best``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from .budget import BudgetClock, BudgetExhausted, SearchBudget, SearchResult, Status

MAX_VERTICES = 4096


def adjacency_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    adj = [0] * n
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop at {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def adjacency_from_predicate(n: int, pred) -> list[int]:
    adj = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if pred(u, v):
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return adj


def is_clique(adj: Sequence[int], vs: Sequence[int]) -> bool:
    vs = list(vs)
    if len(set(vs)) != len(vs):
        return False
    for i, u in enumerate(vs):
        for v in vs[i + 1:]:
            if not (adj[u] >> v) & 1:
                return False
    return True


def _colour_sort(P: int, adj: list[int]) -> tuple[list[int], list[int]]:
    order: list[int] = []
    bounds: list[int] = []
    uncoloured = P
    colour = 0
    while uncoloured:
        colour += 1
        Q = uncoloured
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            Q &= ~adj[v] & ~low
            uncoloured &= ~low
            order.append(v)
            bounds.append(colour)
    return order, bounds


def max_clique(adj: Sequence[int], budget: SearchBudget | None = None) -> SearchResult:
    """Clique number of the graph with the given neighbour bitmasks.

    Returns a SearchResult whose ``value`` is the clique size and whose
    witness is a sorted vertex list.  On budget exhaustion the best clique
    found so far is returned with status BOUND (a lower bound only).
    """
    n = len(adj)
    if n > MAX_VERTICES:
        raise ValueError(f"graph has {n} vertices; limit is {MAX_VERTICES}")
    for u in range(n):
        if (adj[u] >> u) & 1:
            raise ValueError(f"self-loop at {u}")
        if adj[u] >> n:
            raise ValueError(f"neighbour index out of range at {u}")
    if n == 0:
        return SearchResult(0, [], Status.EXACT)
    clock = (budget or SearchBudget()).start()

    # relabel so that high-degree vertices get low indices (coloured first)
    perm = sorted(range(n), key=lambda v: (-bin(adj[v]).count("1"), v))
    pos = {v: i for i, v in enumerate(perm)}
    radj = [0] * n
    for i, v in enumerate(perm):
        m = 0
        for u in _iter_bits(adj[v]):
            m |= 1 << pos[u]
        radj[i] = m

    best: list[int] = [0]
    cur: list[int] = []

    def expand(P: int) -> None:
        clock.tick()
        order, bounds = _colour_sort(P, radj)
        for idx in range(len(order) - 1, -1, -1):
            if len(cur) + bounds[idx] <= len(best):
                return
            v = order[idx]
            cur.append(v)
            NP = P & radj[v]
            if NP:
                expand(NP)
            elif len(cur) > len(best):
                best[:] = cur
            cur.pop()
            P &= ~(1 << v)

    status = Status.EXACT
    try:
        expand((1 << n) - 1)
    except BudgetExhausted:
        status = Status.BOUND
    witness = sorted(perm[i] for i in best)
    return SearchResult(len(witness), witness, status, nodes=clock.nodes)


def _iter_bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low
