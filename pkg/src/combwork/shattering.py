"""t-shattering of k-subsets of [n] by families of permutations.

A permutation is its one-line sequence of the elements 1..n.  The order
it induces on X is X's elements listed as they appear.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb, factorial

from .core.budget import BudgetExhausted, SearchBudget, Status
from .core.certificate import Certificate, check, register_verifier

Perm = tuple[int, ...]


@dataclass(frozen=True)
class PermFamily:
    n: int
    perms: tuple[Perm, ...]

    @classmethod
    def of(cls, n: int, perms) -> "PermFamily":
        ps = tuple(tuple(p) for p in perms)
        for p in ps:
            if sorted(p) != list(range(1, n + 1)):
                raise ValueError(f"{p} is not a permutation of [{n}]")
        return cls(n, ps)

    def __len__(self) -> int:
        return len(self.perms)


def perm_str(p: Perm) -> str:
    return "(" + ",".join(map(str, p)) + ")"


def parse_perm(text: str) -> Perm:
    if not re.fullmatch(r"\s*\(\s*\d+(\s*,\s*\d+)*\s*\)\s*", text):
        raise ValueError(f"bad permutation {text!r}")
    return tuple(int(x) for x in text.strip().strip("()").split(","))


EXAMPLE_S5 = PermFamily.of(5, [(1, 2, 3, 4, 5), (2, 4, 1, 5, 3), (5, 3, 4, 1, 2),
                             (1, 4, 3, 5, 2), (3, 1, 2, 5, 4), (5, 1, 2, 4, 3)])


def induced_order(p: Perm, X) -> tuple[int, ...]:
    Xs = set(X)
    return tuple(x for x in p if x in Xs)


def orders_induced(P: PermFamily, X) -> set[tuple[int, ...]]:
    if not set(X) <= set(range(1, P.n + 1)):
        raise ValueError("X is not a subset of [n]")
    return {induced_order(p, X) for p in P.perms}


def t_shatters_all(P: PermFamily, k: int, t: int):
    """(ok, first k-subset with fewer than t orders)."""
    if not 1 <= t <= factorial(k):
        raise ValueError("need 1 <= t <= k!")
    for X in combinations(range(1, P.n + 1), k):
        if len(orders_induced(P, X)) < t:
            return False, X
    return True, None


def failing_subsets(P: PermFamily, k: int, t: int) -> list[tuple[int, ...]]:
    return [X for X in combinations(range(1, P.n + 1), k) if len(orders_induced(P, X)) < t]


def min_orders(P: PermFamily, k: int) -> int:
    return min(len(orders_induced(P, X)) for X in combinations(range(1, P.n + 1), k))


def identity_reversal(n: int) -> PermFamily:
    return PermFamily.of(n, [tuple(range(1, n + 1)), tuple(range(n, 0, -1))])


EXACT_LIMIT = 7


class _Table:
    """Order codes: code[p][x] is the index of p's order on the x-th k-subset."""

    def __init__(self, n: int, k: int, perms: list[Perm]):
        self.subsets = list(combinations(range(1, n + 1), k))
        orders = {o: i for i, o in enumerate(permutations(range(k)))}
        self.code = []
        for p in perms:
            pos = {v: i for i, v in enumerate(p)}
            row = []
            for X in self.subsets:
                ranks = sorted(range(k), key=lambda j: pos[X[j]])
                row.append(orders[tuple(ranks)])
            self.code.append(row)


def min_family(n: int, k: int, t: int, budget: SearchBudget | None = None, seed: int = 0):
    """Smallest family t-shattering every k-subset of [n].

    Exact for n <= 7: iterative deepening on the size with the identity
    fixed as first member (any family can be relabelled so).  Each node
    branches on the permutations adding a new order to the most deficient
    subset, excluding permutations already tried at that node.  Beyond
    n = 7, or when the budget runs out, a greedy family gives an upper
    bound.  Returns ``(size, PermFamily, status)``.
    """
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    if not 1 <= t <= factorial(k):
        raise ValueError("need 1 <= t <= k!")
    if t == 1:
        return 1, PermFamily.of(n, [tuple(range(1, n + 1))]), Status.EXACT
    if t == 2:
        # t orders need at least t permutations
        return 2, identity_reversal(n), Status.EXACT
    if n > EXACT_LIMIT:
        F = greedy_family(n, k, t, seed)
        return len(F), F, Status.BOUND
    perms = list(permutations(range(1, n + 1)))
    tab = _Table(n, k, perms)
    clock = (budget or SearchBudget()).start()
    nsub = len(tab.subsets)
    try:
        for size in range(t, factorial(n) + 1):
            seen = [{tab.code[0][x]} for x in range(nsub)]
            found = _deepen(tab, [0], seen, size, t, clock, set())
            if found is not None:
                return size, PermFamily.of(n, [perms[i] for i in found]), Status.EXACT
    except BudgetExhausted:
        F = greedy_family(n, k, t, seed)
        return len(F), F, Status.BOUND
    raise RuntimeError("the full symmetric group shatters everything")


def _deepen(tab: _Table, chosen: list[int], seen: list[set], size: int, t: int,
            clock, banned: set):
    clock.tick()
    left = size - len(chosen)
    worst, deficit = -1, 0
    for x, s in enumerate(seen):
        d = t - len(s)
        if d > left:
            return None
        if d > deficit:
            worst, deficit = x, d
    if worst < 0:
        return list(chosen)
    local_ban = set(banned)
    for p in range(len(tab.code)):
        if p in local_ban or p in chosen or tab.code[p][worst] in seen[worst]:
            continue
        added = []
        for x, s in enumerate(seen):
            c = tab.code[p][x]
            if c not in s:
                s.add(c)
                added.append((x, c))
        chosen.append(p)
        res = _deepen(tab, chosen, seen, size, t, clock, local_ban)
        chosen.pop()
        for x, c in added:
            seen[x].discard(c)
        if res is not None:
            return res
        local_ban.add(p)
    return None


def greedy_family(n: int, k: int, t: int, seed: int = 0, pool: int = 2000) -> PermFamily:
    """Repeatedly add the permutation (from a random pool) covering the most missing orders."""
    rng = random.Random(seed)
    subsets = list(combinations(range(1, n + 1), k))
    seen = [set() for _ in subsets]
    fam = [tuple(range(1, n + 1))]
    for x, X in enumerate(subsets):
        seen[x].add(induced_order(fam[0], X))
    if n <= EXACT_LIMIT:
        cands = list(permutations(range(1, n + 1)))
    else:
        cands = []
        for _ in range(pool):
            p = list(range(1, n + 1))
            rng.shuffle(p)
            cands.append(tuple(p))
    while any(len(s) < t for s in seen):
        def gain(p):
            return sum(1 for x, X in enumerate(subsets)
                       if len(seen[x]) < t and induced_order(p, X) not in seen[x])
        best = max(cands, key=gain)
        if gain(best) == 0:
            raise RuntimeError("greedy pool cannot make progress")
        fam.append(best)
        for x, X in enumerate(subsets):
            seen[x].add(induced_order(best, X))
    return PermFamily.of(n, fam)


# -- certificates -----------------------------------------------------------------

MINIMALITY_LIMIT = 500_000


def certify_family(P: PermFamily, k: int, t: int, status: Status, runtime_ms: int = 0) -> Certificate:
    """Exact when the verifier can re-prove minimality (counting or exhaustion)."""
    m = len(P)
    provable = m <= t or comb(factorial(P.n) - 1, m - 2) <= MINIMALITY_LIMIT
    kind = "exact" if status is Status.EXACT and provable else "bound"
    return Certificate("shattering.family", {"n": P.n, "k": k, "t": t}, kind, str(m),
                       [perm_str(p) for p in P.perms],
                       {"runtime_ms": runtime_ms, "search_status": status.value})


def certify_example(P: PermFamily, k: int, claims, runtime_ms: int = 0) -> Certificate:
    """Verification of stated facts: per subset, its number of orders and missing orders."""
    rows = []
    for X in claims:
        got = orders_induced(P, X)
        missing = sorted(set(permutations(sorted(X))) - got)
        rows.append({"X": list(X), "orders": len(got), "missing": [list(o) for o in missing]})
    return Certificate("shattering.example", {"n": P.n, "k": k}, "verification",
                       str(min_orders(P, k)),
                       {"perms": [perm_str(p) for p in P.perms], "claims": rows},
                       {"runtime_ms": runtime_ms})


def _orders_brute(perms, X) -> set:
    out = set()
    for p in perms:
        where = sorted(X, key=p.index)
        out.add(tuple(where))
    return out


def _parse_family(n: int, texts) -> list[Perm]:
    perms = [parse_perm(s) for s in texts]
    for p in perms:
        check(sorted(p) == list(range(1, n + 1)), f"{p} is not a permutation of [{n}]")
    return perms


@register_verifier("shattering.family")
def _verify_family(cert: Certificate) -> None:
    n, k, t = cert.p_int("n"), cert.p_int("k"), cert.p_int("t")
    perms = _parse_family(n, cert.witness)
    check(len(set(perms)) == len(perms), "repeated permutations")
    check(str(len(perms)) == cert.value, "size differs from value")
    for X in combinations(range(1, n + 1), k):
        check(len(_orders_brute(perms, X)) >= t, f"{X} sees fewer than {t} orders")
    if cert.kind != "exact" or len(perms) <= t:
        return  # at least t permutations are needed to show t orders
    m = len(perms)
    check(comb(factorial(n) - 1, m - 2) <= MINIMALITY_LIMIT, "minimality too large to re-check")
    ident = tuple(range(1, n + 1))
    others = [p for p in permutations(range(1, n + 1)) if p != ident]
    subsets = list(combinations(range(1, n + 1), k))
    for rest in combinations(others, m - 2):
        fam = (ident,) + rest
        ok = all(len(_orders_brute(fam, X)) >= t for X in subsets)
        check(not ok, f"a family of size {m - 1} already works")


@register_verifier("shattering.example")
def _verify_example(cert: Certificate) -> None:
    n, k = cert.p_int("n"), cert.p_int("k")
    perms = _parse_family(n, cert.witness["perms"])
    low = min(len(_orders_brute(perms, X)) for X in combinations(range(1, n + 1), k))
    check(str(low) == cert.value, "minimum order count differs from value")
    for row in cert.witness["claims"]:
        X = row["X"]
        got = _orders_brute(perms, X)
        check(len(got) == row["orders"], f"order count wrong for {X}")
        missing = {o for o in permutations(sorted(X)) if o not in got}
        check(missing == {tuple(o) for o in row["missing"]}, f"missing orders wrong for {X}")
