"""Turan problems for subcubes of the hypercube.

A set S of k-subcubes is Q_d-free when every d-subcube contains at least
one k-subcube outside S; ex_k(n, d) is the largest such S.  Finding
ex_k(n, d) is a minimum hitting-set problem: the complement of S must
meet the "shadow" (set of contained k-subcubes) of every d-subcube.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .core.budget import BudgetExhausted, SearchBudget, Status
from .core.certificate import Certificate, check, register_verifier
from .cube import Subcube, all_subcubes, count_subcubes, subcubes_within

KINDS = ("weight_mod4_k0", "C13", "D2", "C2")


@dataclass(frozen=True)
class SubcubeSet:
    n: int
    k: int
    members: frozenset

    @classmethod
    def of(cls, n: int, k: int, members) -> "SubcubeSet":
        ms = frozenset(members)
        for s in ms:
            if s.n != n or s.k != k:
                raise ValueError(f"{s} is not a {k}-subcube of Q_{n}")
        return cls(n, k, ms)

    def __len__(self) -> int:
        return len(self.members)

    def strings(self) -> list[str]:
        return sorted(str(s) for s in self.members)


@dataclass
class TuranResult:
    n: int
    k: int
    d: int
    value: int
    witness: SubcubeSet
    density: Fraction
    status: Status = Status.EXACT


@lru_cache(maxsize=64)
def _shadow_system(n: int, k: int, d: int):
    """(k-subcubes, index, d-subcubes, shadow bitmask per d-subcube)."""
    ks = all_subcubes(n, k)
    index = {s: i for i, s in enumerate(ks)}
    ds = all_subcubes(n, d)
    shadows = []
    for t in ds:
        m = 0
        for s in subcubes_within(t, k):
            m |= 1 << index[s]
        shadows.append(m)
    return ks, index, ds, shadows


def _check_order(n: int, k: int, d: int) -> None:
    if not 0 <= k <= d <= n:
        raise ValueError(f"need 0 <= k <= d <= n, got k={k}, d={d}, n={n}")


def is_free(S: SubcubeSet, d: int) -> tuple[bool, Subcube | None]:
    """Whether S is Q_d-free; otherwise a d-subcube whose whole shadow lies in S."""
    _check_order(S.n, S.k, d)
    ks, index, ds, shadows = _shadow_system(S.n, S.k, d)
    mask = 0
    for s in S.members:
        mask |= 1 << index[s]
    for t, sh in zip(ds, shadows):
        if sh & ~mask == 0:
            return False, t
    return True, None


# -- constructions -----------------------------------------------------------

def _segment_sums(s: Subcube) -> list[int]:
    """Bit sums of the non-flip coordinates between consecutive flip-bits."""
    sums = [0]
    for i in range(s.n):
        if (s.stars >> i) & 1:
            sums.append(0)
        else:
            sums[-1] += (s.values >> i) & 1
    return sums


def construct(kind: str, n: int, d: int | None = None, m: int | None = None) -> SubcubeSet:
    """One of the named lower-bound constructions.

    ``weight_mod4_k0``: vertices whose weight is not divisible by 4.
    ``C13``: edges whose left/right bit sums are not both even.
    ``D2`` (needs ``d``): 2-subcubes, minus those whose flip-bits share a
    part of the partition ``i -> i mod d`` and whose non-flip bit sum is
    divisible by d.  Free of (d+1)-subcubes.
    ``C2`` (needs ``m``): 2-subcubes whose three segment sums are not all
    divisible by m+1.  Free of (3m+2)-subcubes.
    """
    if kind == "weight_mod4_k0":
        return SubcubeSet.of(n, 0, (Subcube(n, 0, v) for v in range(1 << n)
                                    if bin(v).count("1") % 4))
    if kind == "C13":
        if n < 1:
            raise ValueError("C13 needs n >= 1")
        keep = (s for s in all_subcubes(n, 1)
                if not all(w % 2 == 0 for w in _segment_sums(s)))
        return SubcubeSet.of(n, 1, keep)
    if kind == "D2":
        if d is None or d < 1 or n < max(d, 2):
            raise ValueError(f"D2 needs d >= 1 and n >= max(d, 2); got d={d}, n={n}")

        def dropped(s: Subcube) -> bool:
            a, b = s.flip_bits()
            return a % d == b % d and bin(s.values).count("1") % d == 0

        return SubcubeSet.of(n, 2, (s for s in all_subcubes(n, 2) if not dropped(s)))
    if kind == "C2":
        if m is None or m < 1 or n < 2:
            raise ValueError(f"C2 needs m >= 1 and n >= 2; got m={m}, n={n}")
        keep = (s for s in all_subcubes(n, 2)
                if not all(w % (m + 1) == 0 for w in _segment_sums(s)))
        return SubcubeSet.of(n, 2, keep)
    raise ValueError(f"unknown construction {kind!r}; expected one of {KINDS}")


def forbidden_dimension(kind: str, d: int | None = None, m: int | None = None) -> int:
    """The subcube dimension the construction is claimed to avoid."""
    return {"weight_mod4_k0": 3, "C13": 3, "D2": (d or 0) + 1, "C2": 3 * (m or 0) + 2}[kind]


def density(S: SubcubeSet) -> Fraction:
    return Fraction(len(S), count_subcubes(S.n, S.k))


def density_profile(kind: str, n_range, d: int | None = None,
                    m: int | None = None) -> list[tuple[int, Fraction]]:
    return [(n, density(construct(kind, n, d=d, m=m))) for n in n_range]


# -- exact search ------------------------------------------------------------

MAX_ELEMENTS = 512


def exact_ex(n: int, k: int, d: int, budget: SearchBudget | None = None) -> TuranResult:
    """ex_k(n, d) by branch and bound over minimum hitting sets.

    Symmetry: every d-subcube is equivalent under Aut(Q_n), and the
    stabiliser of one acts transitively on its k-subcubes, so some optimal
    hitting set contains the first k-subcube of the first d-subcube.  The
    root therefore has a single branch.
    """
    _check_order(n, k, d)
    ks, index, ds, shadows = _shadow_system(n, k, d)
    m = len(ks)
    if m > MAX_ELEMENTS:
        raise ValueError(f"|Q_{k}^{n}| = {m} exceeds the search guard {MAX_ELEMENTS}")
    clock = (budget or SearchBudget()).start()
    full = (1 << m) - 1
    best = [m, full]  # hitting-set size, hitting-set mask
    edges = sorted(set(shadows))

    def rec(chosen: int, excluded: int, count: int) -> None:
        clock.tick()
        pick = None
        lb = 0
        used = 0
        for e in edges:
            if e & chosen:
                continue
            avail = e & ~excluded
            if not avail:
                return
            if pick is None or bin(avail).count("1") < bin(pick).count("1"):
                pick = avail
            if not avail & used:
                lb += 1
                used |= avail
        if pick is None:
            if count < best[0]:
                best[0], best[1] = count, chosen
            return
        if count + lb >= best[0]:
            return
        x = pick
        while x:
            low = x & -x
            x ^= low
            rec(chosen | low, excluded, count + 1)
            excluded |= low

    status = Status.EXACT
    try:
        root = edges[0] & -edges[0]
        rec(root, 0, 1)
    except BudgetExhausted:
        status = Status.BOUND
    free_mask = full & ~best[1]
    witness = SubcubeSet.of(n, k, (ks[i] for i in range(m) if (free_mask >> i) & 1))
    value = len(witness)
    return TuranResult(n, k, d, value, witness, Fraction(value, m), status)


# -- certificates ------------------------------------------------------------

def naive_free(n: int, k: int, d: int, members: set[Subcube]) -> bool:
    """Freeness straight from the definition, without the bitmask tables."""
    for t in all_subcubes(n, d):
        if all(s in members for s in subcubes_within(t, k)):
            return False
    return True


def _parse_members(cert: Certificate, n: int, k: int) -> set[Subcube]:
    strs = cert.witness
    check(isinstance(strs, list), "witness must be a list of ternary strings")
    check(strs == sorted(strs), "witness not sorted")
    members = {Subcube.parse(s) for s in strs}
    check(len(members) == len(strs), "witness has repeated subcubes")
    for s in members:
        check(s.n == n and s.k == k, f"{s} is not a {k}-subcube of Q_{n}")
    return members


def certify_exact(res: TuranResult, runtime_ms: int = 0) -> Certificate:
    kind = "exact" if res.status is Status.EXACT else "bound"
    return Certificate("cube_turan.exact", {"n": res.n, "k": res.k, "d": res.d}, kind,
                       str(res.value), res.witness.strings(),
                       {"runtime_ms": runtime_ms, "density": f"{res.density}"})


def certify_construction(kind: str, n: int, d: int | None = None, m: int | None = None,
                         runtime_ms: int = 0) -> Certificate:
    S = construct(kind, n, d=d, m=m)
    dd = forbidden_dimension(kind, d, m)
    ok, _ = is_free(S, dd)
    params = {"construction": kind, "n": n, "forbidden_d": dd}
    if d is not None:
        params["d"] = d
    if m is not None:
        params["m"] = m
    return Certificate("cube_turan.construction", params, "construction" if ok else "verification",
                       str(len(S)), S.strings(), {"runtime_ms": runtime_ms, "free": ok})


@register_verifier("cube_turan.exact")
def _verify_exact(cert: Certificate) -> None:
    n, k, d = cert.p_int("n"), cert.p_int("k"), cert.p_int("d")
    check(0 <= k <= d <= n, "parameter order violated")
    members = _parse_members(cert, n, k)
    check(str(len(members)) == cert.value, "witness size differs from value")
    check(naive_free(n, k, d, members), "witness is not Q_d-free")
    total = count_subcubes(n, k)
    if cert.kind == "exact" and total <= 16:
        # small enough to re-derive the maximum outright
        ks = all_subcubes(n, k)
        best = 0
        for size in range(total, -1, -1):
            if any(naive_free(n, k, d, set(c)) for c in combinations(ks, size)):
                best = size
                break
        check(best == len(members), f"brute force maximum is {best}, not {len(members)}")


@register_verifier("cube_turan.construction")
def _verify_construction(cert: Certificate) -> None:
    n, dd = cert.p_int("n"), cert.p_int("forbidden_d")
    strs = cert.witness
    k = Subcube.parse(strs[0]).k if strs else {"weight_mod4_k0": 0, "C13": 1}.get(
        cert.params["construction"], 2)
    members = _parse_members(cert, n, k)
    check(str(len(members)) == cert.value, "witness size differs from value")
    free = naive_free(n, k, dd, members)
    if cert.kind == "construction":
        check(free, f"construction is not Q_{dd}-free")
    else:
        check(not free, "verification certificate claims non-freeness but witness is free")
