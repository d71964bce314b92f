"""Colourings of Z/2^r whose monochromatic solutions of sum a_i x_i = 0 stay divisible.

For an instance (r, a_1..a_k) let d be the largest d <= r such that 2^d
divides some non-empty subset sum of the a_i.  A colouring is good when
every monochromatic solution has every x_i divisible by 2^(r-d).
Solutions may repeat values and may use 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .core.budget import BudgetExhausted, SearchBudget, Status
from .core.certificate import Certificate, check, register_verifier
from .core.numbers import v2

SEARCH_LIMIT = 1 << 22


@dataclass(frozen=True)
class ModularInstance:
    r: int
    a: tuple[int, ...]

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("r must be non-negative")
        if not self.a:
            raise ValueError("need at least one coefficient")
        object.__setattr__(self, "a", tuple(x % self.modulus for x in self.a))

    @property
    def modulus(self) -> int:
        return 1 << self.r

    @property
    def k(self) -> int:
        return len(self.a)


def compute_d(inst: ModularInstance) -> int:
    m = inst.modulus
    best = 0
    for mask in range(1, 1 << inst.k):
        s = sum(x for j, x in enumerate(inst.a) if (mask >> j) & 1) % m
        best = max(best, v2(s, inst.r))
    return best


def _guard(inst: ModularInstance) -> None:
    if inst.modulus ** inst.k > SEARCH_LIMIT:
        raise ValueError(f"(2^{inst.r})^{inst.k} tuples exceed the search limit")


def bad_solutions(inst: ModularInstance) -> list[tuple[int, ...]]:
    """Solutions with some x_i not divisible by 2^(r-d), in lexicographic order."""
    _guard(inst)
    m = inst.modulus
    step = 1 << (inst.r - compute_d(inst))
    out = []
    for x in product(range(m), repeat=inst.k):
        if sum(ai * xi for ai, xi in zip(inst.a, x)) % m == 0 and any(xi % step for xi in x):
            out.append(x)
    return out


def colouring_ok(colour, inst: ModularInstance):
    """(ok, first violating monochromatic solution).  ``colour[x]`` for x in Z/2^r."""
    if len(colour) != inst.modulus:
        raise ValueError("colouring must assign every residue")
    for x in bad_solutions(inst):
        if len({colour[xi] for xi in x}) == 1:
            return False, x
    return True, None


def classes_of(colour) -> list[list[int]]:
    out: dict = {}
    for x, c in enumerate(colour):
        out.setdefault(c, []).append(x)
    return [out[c] for c in sorted(out)]


def min_K(inst: ModularInstance, K_max: int = 4, budget: SearchBudget | None = None):
    """Least K <= K_max admitting a good colouring.

    Backtracks over restricted-growth colourings (colour c is opened only
    after 0..c-1), pruning as soon as a bad solution becomes monochromatic.
    Returns ``(K or None, colouring or None, status)``; None with EXACT
    means no K <= K_max works.
    """
    m = inst.modulus
    # distinct-value sets of bad solutions, filed under their largest element
    by_max: dict[int, set] = {}
    for x in bad_solutions(inst):
        vals = frozenset(x)
        by_max.setdefault(max(vals), set()).add(vals)
    clock = (budget or SearchBudget()).start()
    colour = [0] * m

    def rec(x: int, used: int, K: int) -> bool:
        clock.tick()
        if x == m:
            return True
        for c in range(min(K, used + 1)):
            colour[x] = c
            if any(all(colour[y] == c for y in s) for s in by_max.get(x, ())):
                continue
            if rec(x + 1, max(used, c + 1), K):
                return True
        return False

    try:
        for K in range(1, K_max + 1):
            if rec(0, 0, K):
                return K, list(colour), Status.EXACT
    except BudgetExhausted:
        return None, None, Status.BOUND
    return None, None, Status.EXACT


def refine(colour, x: int) -> list[int]:
    """Move residue x into a fresh colour class."""
    out = list(colour)
    out[x] = max(colour) + 1
    return out


# -- certificates -----------------------------------------------------------------

def certify_min_K(inst: ModularInstance, K_max: int = 4, budget: SearchBudget | None = None,
                  runtime_ms: int = 0) -> Certificate:
    K, colour, status = min_K(inst, K_max, budget)
    if status is not Status.EXACT:
        raise BudgetExhausted("min_K search ran out of budget")
    return Certificate("rado.min_K", {"r": inst.r, "a": list(inst.a), "K_max": K_max},
                       "exact", "none" if K is None else str(K),
                       None if colour is None else classes_of(colour),
                       {"runtime_ms": runtime_ms, "d": compute_d(inst),
                        "zero_solution": "counted; always divisible"})


def certify_d_table(max_k: int, max_r: int, runtime_ms: int = 0) -> Certificate:
    rows = []
    for r in range(1, max_r + 1):
        for k in range(1, max_k + 1):
            for a in product(range(1 << r), repeat=k):
                rows.append([r, list(a), compute_d(ModularInstance(r, a))])
    return Certificate("rado.d_table", {"max_k": max_k, "max_r": max_r}, "verification",
                       str(len(rows)), rows, {"runtime_ms": runtime_ms})


def _valuation_oracle(x: int, r: int) -> int:
    # largest d <= r with 2^d | x, by trial division from the top
    for d in range(r, -1, -1):
        if x % (1 << d) == 0:
            return d
    return 0


def _d_oracle(r: int, a) -> int:
    m = 1 << r
    return max(_valuation_oracle(sum(sub) % m, r)
               for size in range(1, len(a) + 1) for sub in combinations(a, size))


def _brute_good(colour, r: int, a, d: int) -> bool:
    m, step = 1 << r, 1 << (r - d)
    for x in product(range(m), repeat=len(a)):
        if sum(p * q for p, q in zip(a, x)) % m:
            continue
        if len({colour[xi] for xi in x}) == 1 and any(xi % step for xi in x):
            return False
    return True


@register_verifier("rado.min_K")
def _verify_min_K(cert: Certificate) -> None:
    r = cert.p_int("r")
    a = [int(x) for x in cert.params["a"].split(",")]
    K_max = cert.p_int("K_max")
    m = 1 << r
    d = _d_oracle(r, a)
    check(m ** len(a) <= SEARCH_LIMIT, "instance too large to re-verify")
    if cert.value == "none":
        K_fail = K_max
    else:
        classes = cert.witness
        flat = sorted(x for cl in classes for x in cl)
        check(flat == list(range(m)), "colour classes do not partition Z/2^r")
        check(str(len(classes)) == cert.value, "class count differs from value")
        colour = [0] * m
        for c, cl in enumerate(classes):
            for x in cl:
                colour[x] = c
        check(_brute_good(colour, r, a, d), "a monochromatic solution breaks divisibility")
        K_fail = len(classes) - 1
    check(K_fail <= 0 or K_fail ** m <= 1 << 20, "minimality check too large")
    # minimality: no colouring with K_fail colours is good
    if K_fail >= 1:
        for colour in product(range(K_fail), repeat=m):
            check(not _brute_good(colour, r, a, d), f"a {K_fail}-colouring already works")


@register_verifier("rado.d_table")
def _verify_d_table(cert: Certificate) -> None:
    max_k, max_r = cert.p_int("max_k"), cert.p_int("max_r")
    seen = set()
    for r, a, d in cert.witness:
        check(1 <= r <= max_r and 1 <= len(a) <= max_k, "row outside the stated range")
        check(_d_oracle(r, a) == d, f"d wrong for r={r}, a={a}")
        seen.add((r, tuple(a)))
    expected = sum((1 << r) ** k for r in range(1, max_r + 1) for k in range(1, max_k + 1))
    check(len(seen) == expected == len(cert.witness), "table does not cover every instance")
    check(str(len(cert.witness)) == cert.value, "row count differs from value")
