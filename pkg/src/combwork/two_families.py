"""Pair systems (A_i, B_i): the Bollobas conditions and the |A_i & B_i| = 2 variant."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .core.budget import BudgetExhausted, SearchBudget, Status
from .core.certificate import Certificate, VerificationError, check, register_verifier
from .core.clique import adjacency_from_predicate, max_clique

Pair = tuple[frozenset, frozenset]


@dataclass(frozen=True)
class PairSystem:
    a: int
    b: int
    pairs: tuple[Pair, ...]

    @classmethod
    def of(cls, a: int, b: int, pairs) -> "PairSystem":
        ps = tuple((frozenset(A), frozenset(B)) for A, B in pairs)
        for A, B in ps:
            if len(A) != a or len(B) != b:
                raise ValueError(f"pair ({sorted(A)}, {sorted(B)}) has wrong sizes")
        return cls(a, b, ps)

    def __len__(self) -> int:
        return len(self.pairs)

    def encode(self) -> list[list[list[int]]]:
        return [[sorted(A), sorted(B)] for A, B in self.pairs]


def check_bollobas(S: PairSystem):
    """(ok, violation).  Violations: ("disjoint", i) or ("cross", i, j)."""
    for i, (A, B) in enumerate(S.pairs):
        if A & B:
            return False, ("disjoint", i)
    for i, (Ai, _) in enumerate(S.pairs):
        for j, (_, Bj) in enumerate(S.pairs):
            if i != j and not Ai & Bj:
                return False, ("cross", i, j)
    return True, None


def check_conjecture(S: PairSystem):
    """(ok, violation) for |A_i & B_i| = 2 and A_i & B_j not within A_k & B_k.

    The triple condition ranges over i != j with k unrestricted.
    Violations: ("meet", i) or ("triple", i, j, k).
    """
    cores = []
    for i, (A, B) in enumerate(S.pairs):
        if len(A & B) != 2:
            return False, ("meet", i)
        cores.append(A & B)
    for i, (Ai, _) in enumerate(S.pairs):
        for j, (_, Bj) in enumerate(S.pairs):
            if i == j:
                continue
            X = Ai & Bj
            for k, core in enumerate(cores):
                if X <= core:
                    return False, ("triple", i, j, k)
    return True, None


def conj_bound(a: int, b: int) -> int:
    if not b >= a >= 2:
        raise ValueError("need b >= a >= 2")
    return sum(2 ** (i - 2) * comb(a + b - 2 * i, a - i) for i in range(2, a + 1))


def paper_construction(a: int, b: int) -> PairSystem:
    """The tight family on ground set {1, ..., a+b-2}.

    For each 2 <= c <= a: every a-set A containing {2c-3, 2c-2} and exactly
    one of {2e-3, 2e-2} for each 2 <= e < c, paired with
    B = (ground - A) | {2c-3, 2c-2}.
    """
    if not b >= a >= 2:
        raise ValueError("need b >= a >= 2")
    ground = frozenset(range(1, a + b - 1))
    pairs = []
    for c in range(2, a + 1):
        core = frozenset({2 * c - 3, 2 * c - 2})
        for rest in combinations(sorted(ground - core), a - 2):
            A = core | frozenset(rest)
            if all(len(A & {2 * e - 3, 2 * e - 2}) == 1 for e in range(2, c)):
                pairs.append((A, (ground - A) | core))
    return PairSystem.of(a, b, pairs)


def derived_bollobas(S: PairSystem) -> PairSystem:
    """(A_i - B_i, B_i): the k = i specialisation, a Bollobas system with a-2."""
    return PairSystem.of(S.a - 2, S.b, ((A - B, B) for A, B in S.pairs))


# -- tiny exhaustive searches --------------------------------------------------

def conjecture_candidates(a: int, b: int, ground_size: int) -> list[Pair]:
    ground = range(1, ground_size + 1)
    out = []
    for B in combinations(ground, b):
        Bs = frozenset(B)
        for core in combinations(B, 2):
            others = [x for x in ground if x not in core]
            for extra in combinations(others, a - 2):
                A = frozenset(core) | frozenset(extra)
                if len(A & Bs) == 2:
                    out.append((A, Bs))
    return sorted(set(out), key=lambda p: (sorted(p[0]), sorted(p[1])))


def exact_max_conjecture(a: int, b: int, ground_size: int,
                         budget: SearchBudget | None = None):
    """Largest system on [ground_size] satisfying both conditions.

    Pairs are distinct as set pairs.  Backtracking adds candidates in
    index order and re-checks only triples touching the new pair.
    Returns ``(value, PairSystem, status)``.
    """
    if not b >= a >= 2:
        raise ValueError("need b >= a >= 2")
    cands = conjecture_candidates(a, b, ground_size)
    clock = (budget or SearchBudget()).start()
    cores = [A & B for A, B in cands]
    best: list[int] = []
    cur: list[int] = []

    def compatible(new: int) -> bool:
        # triples (i, j, k), i != j, in cur + [new], with new among them
        idx = cur + [new]
        Cn = cores[new]
        for i in idx:
            for j in idx:
                if i == j:
                    continue
                X = cands[i][0] & cands[j][1]
                if new in (i, j):
                    if any(X <= cores[k] for k in idx):
                        return False
                elif X <= Cn:
                    return False
        return True

    def rec(start: int) -> None:
        clock.tick()
        if len(cur) > len(best):
            best[:] = cur
        if len(cur) + len(cands) - start <= len(best):
            return
        for t in range(start, len(cands)):
            if compatible(t):
                cur.append(t)
                rec(t + 1)
                cur.pop()

    status = Status.EXACT
    try:
        rec(0)
    except BudgetExhausted:
        status = Status.BOUND
    S = PairSystem.of(a, b, (cands[t] for t in best))
    return len(S), S, status


def exact_max_bollobas(a: int, b: int, ground_size: int, budget: SearchBudget | None = None):
    """Largest Bollobas system on [ground_size] via maximum clique.

    Candidates are disjoint (A, B) pairs; two are adjacent when both cross
    intersections are non-empty.
    """
    ground = range(1, ground_size + 1)
    cands = []
    for A in combinations(ground, a):
        rest = [x for x in ground if x not in A]
        for B in combinations(rest, b):
            cands.append((frozenset(A), frozenset(B)))
    adj = adjacency_from_predicate(
        len(cands), lambda i, j: bool(cands[i][0] & cands[j][1]) and bool(cands[j][0] & cands[i][1]))
    res = max_clique(adj, budget)
    S = PairSystem.of(a, b, (cands[i] for i in res.witness))
    return res.value, S, res.status


# -- certificates ------------------------------------------------------------------

def _decode(cert: Certificate, a: int, b: int) -> PairSystem:
    pairs = []
    for A, B in cert.witness:
        check(A == sorted(A) and B == sorted(B), "witness lists must be sorted")
        pairs.append((A, B))
    try:
        return PairSystem.of(a, b, pairs)
    except ValueError as exc:
        raise VerificationError(str(exc)) from exc


def certify_construction(a: int, b: int, runtime_ms: int = 0) -> Certificate:
    S = paper_construction(a, b)
    return Certificate("two_families.construction", {"a": a, "b": b}, "construction",
                       str(len(S)), S.encode(),
                       {"runtime_ms": runtime_ms, "conj_bound": str(conj_bound(a, b))})


def certify_exact_max(a: int, b: int, ground_size: int, value: int, S: PairSystem,
                      status: Status, runtime_ms: int = 0) -> Certificate:
    return Certificate("two_families.exact_max", {"a": a, "b": b, "ground": ground_size},
                       "exact" if status is Status.EXACT else "bound", str(value), S.encode(),
                       {"runtime_ms": runtime_ms})


@register_verifier("two_families.construction")
def _verify_construction(cert: Certificate) -> None:
    a, b = cert.p_int("a"), cert.p_int("b")
    S = _decode(cert, a, b)
    check(len({(A, B) for A, B in S.pairs}) == len(S), "repeated pairs")
    check(str(len(S)) == cert.value, "size differs from value")
    ground = set(range(1, a + b - 1))
    check(all(A | B <= ground for A, B in S.pairs), "elements outside [a+b-2]")
    ok, why = check_conjecture(S)
    check(ok, f"conditions fail: {why}")
    check(len(S) == conj_bound(a, b), "size differs from the conjectured bound")


@register_verifier("two_families.exact_max")
def _verify_exact_max(cert: Certificate) -> None:
    a, b, g = cert.p_int("a"), cert.p_int("b"), cert.p_int("ground")
    S = _decode(cert, a, b)
    check(len({(A, B) for A, B in S.pairs}) == len(S), "repeated pairs")
    check(all(A | B <= set(range(1, g + 1)) for A, B in S.pairs), "elements outside ground set")
    check(str(len(S)) == cert.value, "size differs from value")
    ok, why = check_conjecture(S)
    check(ok, f"conditions fail: {why}")
    check(len(S) <= comb(a + b - 2, a - 2) or g > a + b - 2,
          "exceeds the proven bound on a ground set of size a+b-2")
