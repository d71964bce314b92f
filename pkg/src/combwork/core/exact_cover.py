"""Minimum exact covers and minimum odd covers.

Partition mode is Algorithm X (choose the uncovered element with fewest
fitting blocks, branch over those blocks) wrapped in branch and bound on
the block count.  Odd-cover mode is a shortest-path problem in the
parity space GF(2)^|universe|, solved by bidirectional breadth-first
search; each block is used at most once in a shortest solution.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Sequence

from .budget import BudgetExhausted, SearchBudget, SearchResult, Status

PARTITION = "partition"
ODD = "odd-cover"


def _encode(universe: Sequence[Hashable], blocks: Sequence[Iterable[Hashable]]):
    index = {e: i for i, e in enumerate(universe)}
    if len(index) != len(universe):
        raise ValueError("universe has repeated elements")
    masks = []
    for b in blocks:
        m = 0
        for e in b:
            if e not in index:
                raise ValueError(f"block element {e!r} not in universe")
            m |= 1 << index[e]
        masks.append(m)
    return masks


def exact_cover_min(
    universe: Sequence[Hashable],
    blocks: Sequence[Iterable[Hashable]],
    mode: str = PARTITION,
    budget: SearchBudget | None = None,
    root_blocks: Sequence[int] | None = None,
) -> SearchResult:
    """Fewest blocks covering every element exactly once (or an odd number of times).

    ``root_blocks`` optionally restricts which blocks may cover
    ``universe[0]``; callers use it to break symmetry, so it must contain
    a representative of every orbit of blocks through that element.

    The witness is the list of chosen blocks (as given) and
    ``extra["indices"]`` their positions in ``blocks``.
    """
    blocks = [tuple(b) for b in blocks]
    masks = _encode(universe, blocks)
    full = (1 << len(universe)) - 1
    if mode == PARTITION:
        res = _partition(full, masks, budget or SearchBudget(), root_blocks)
    elif mode == ODD:
        res = _odd(full, masks, budget or SearchBudget())
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if res.witness is not None:
        res.extra["indices"] = list(res.witness)
        res.witness = [blocks[i] for i in res.witness]
    return res


def _partition(full: int, masks: list[int], budget: SearchBudget, root_blocks) -> SearchResult:
    u = full.bit_length()
    covering = [[] for _ in range(u)]
    # larger blocks first: finds good incumbents early
    for j in sorted(range(len(masks)), key=lambda j: (-bin(masks[j]).count("1"), j)):
        m = masks[j]
        if m == 0:
            continue
        for e in range(u):
            if (m >> e) & 1:
                covering[e].append(j)
    if any(not c for c in covering):
        return SearchResult(None, None, Status.INFEASIBLE)
    if full == 0:
        return SearchResult(0, [], Status.EXACT)

    clock = budget.start()
    best_count = [len(masks) + 1]
    best: list[list[int]] = [[]]
    chosen: list[int] = []

    def search(covered: int) -> None:
        clock.tick()
        if covered == full:
            if len(chosen) < best_count[0]:
                best_count[0] = len(chosen)
                best[0] = list(chosen)
            return
        remaining = full & ~covered
        pick, pick_opts, maxfit = -1, None, 0
        r = remaining
        while r:
            low = r & -r
            e = low.bit_length() - 1
            r ^= low
            opts = [j for j in covering[e] if not masks[j] & covered]
            if not opts:
                return
            for j in opts:
                c = bin(masks[j]).count("1")
                if c > maxfit:
                    maxfit = c
            if pick_opts is None or len(opts) < len(pick_opts):
                pick, pick_opts = e, opts
        need = -(-bin(remaining).count("1") // maxfit)
        if len(chosen) + need >= best_count[0]:
            return
        for j in pick_opts:
            chosen.append(j)
            search(covered | masks[j])
            chosen.pop()

    status = Status.EXACT
    try:
        if root_blocks is not None:
            for j in root_blocks:
                if not masks[j] & 1:
                    raise ValueError(f"root block {j} does not contain universe[0]")
                chosen.append(j)
                search(masks[j])
                chosen.pop()
        else:
            search(0)
    except BudgetExhausted:
        status = Status.BOUND
    if best_count[0] > len(masks):
        if status is Status.BOUND:
            return SearchResult(None, None, Status.BOUND, nodes=clock.nodes)
        return SearchResult(None, None, Status.INFEASIBLE, nodes=clock.nodes)
    return SearchResult(best_count[0], sorted(best[0]), status, nodes=clock.nodes)


def _odd(full: int, masks: list[int], budget: SearchBudget) -> SearchResult:
    if full == 0:
        return SearchResult(0, [], Status.EXACT)
    span = 0
    for m in masks:
        span |= m
    if span != full:
        return SearchResult(None, None, Status.INFEASIBLE)
    gens = sorted({m for m in masks if m})
    first = {}
    for j, m in enumerate(masks):
        first.setdefault(m, j)
    clock = budget.start()
    # parent maps: state -> (previous state, generator) ; roots map to None
    fwd = {0: None}
    bwd = {full: None}
    ffront, bfront = [0], [full]
    try:
        while ffront and bfront:
            expand_fwd = len(ffront) <= len(bfront)
            front, seen, other = (ffront, fwd, bwd) if expand_fwd else (bfront, bwd, fwd)
            nxt = []
            meets = []
            for s in front:
                for g in gens:
                    clock.tick()
                    t = s ^ g
                    if t in seen:
                        continue
                    seen[t] = (s, g)
                    nxt.append(t)
                    if t in other:
                        meets.append(t)
            if meets:
                best = min(meets, key=lambda t: _depth(fwd, t) + _depth(bwd, t))
                used = _path(fwd, best) + _path(bwd, best)
                return SearchResult(len(used), sorted(first[g] for g in used), Status.EXACT,
                                    nodes=clock.nodes)
            if expand_fwd:
                ffront = nxt
            else:
                bfront = nxt
    except BudgetExhausted:
        return SearchResult(None, None, Status.BOUND, nodes=clock.nodes)
    return SearchResult(None, None, Status.INFEASIBLE, nodes=clock.nodes)


def _depth(parents: dict, s: int) -> int:
    d = 0
    while parents[s] is not None:
        s = parents[s][0]
        d += 1
    return d


def _path(parents: dict, s: int) -> list[int]:
    out = []
    while parents[s] is not None:
        s, g = parents[s]
        out.append(g)
    return out


def cover_counts(universe: Sequence[Hashable], blocks: Iterable[Iterable[Hashable]]) -> dict:
    counts = {e: 0 for e in universe}
    for b in blocks:
        for e in b:
            counts[e] += 1
    return counts
