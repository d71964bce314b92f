"""Paired down-compressions C_i / D_i and the upward edge boundary on P([n]).

A family is an int whose bit S is set when subset S is a member (element
i of [n] is bit i-1 of S).  Every operator is a handful of shifts and
masks over the whole 2^n-bit word.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .core.certificate import Certificate, check, register_verifier


@lru_cache(maxsize=None)
def dir_mask(n: int, i: int) -> int:
    """Positions S (as a 2^n-bit word) with element i in S; i is 0-based."""
    return sum(1 << S for S in range(1 << n) if (S >> i) & 1)


def full_mask(n: int) -> int:
    return (1 << (1 << n)) - 1


@dataclass(frozen=True)
class CubeFamily:
    n: int
    mask: int

    @classmethod
    def of(cls, n: int, sets) -> "CubeFamily":
        m = 0
        for s in sets:
            if not 0 <= s < 1 << n:
                raise ValueError(f"set {s} outside P([{n}])")
            m |= 1 << s
        return cls(n, m)

    @classmethod
    def from_bitstring(cls, n: int, bits: str) -> "CubeFamily":
        if len(bits) != 1 << n or set(bits) - {"0", "1"}:
            raise ValueError("family bitstring must have length 2^n")
        return cls(n, sum(1 << S for S, ch in enumerate(bits) if ch == "1"))

    def bitstring(self) -> str:
        return "".join(str((self.mask >> S) & 1) for S in range(1 << self.n))

    def members(self) -> list[int]:
        return [S for S in range(1 << self.n) if (self.mask >> S) & 1]

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, S: int) -> bool:
        return bool((self.mask >> S) & 1)


def directed_boundary(F: CubeFamily) -> int:
    """Upward edges (A, A+i) with A in F and A+i not in F."""
    total = 0
    for i in range(F.n):
        s = 1 << i
        total += bin(F.mask & ~dir_mask(F.n, i) & ~(F.mask >> s)).count("1")
    return total


def downward_entering(F: CubeFamily) -> int:
    """Downward edges (B, B-i) with B outside F and B-i in F."""
    total = 0
    comp = full_mask(F.n) & ~F.mask
    for i in range(F.n):
        s = 1 << i
        total += bin(comp & dir_mask(F.n, i) & (F.mask << s)).count("1")
    return total


def complement_image(F: CubeFamily) -> CubeFamily:
    """{[n] - A : A not in F}."""
    full = (1 << F.n) - 1
    return CubeFamily.of(F.n, (full ^ S for S in range(1 << F.n) if S not in F))


def c_compress(F: CubeFamily, i: int) -> CubeFamily:
    """Drop S when i in S and S - i is not a member."""
    _check_dir(F.n, i)
    s = 1 << i
    drop = F.mask & dir_mask(F.n, i) & ~(F.mask << s)
    return CubeFamily(F.n, F.mask & ~drop)


def d_compress(F: CubeFamily, i: int) -> CubeFamily:
    """Add S when i not in S and S + i is a member."""
    _check_dir(F.n, i)
    s = 1 << i
    return CubeFamily(F.n, F.mask | ((F.mask & dir_mask(F.n, i)) >> s))


def _check_dir(n: int, i: int) -> None:
    if not 0 <= i < n:
        raise ValueError(f"direction {i} outside 0..{n - 1}")


def is_down_in(F: CubeFamily, i: int) -> bool:
    s = 1 << i
    return (F.mask & dir_mask(F.n, i)) >> s & ~F.mask == 0


def is_down_set(F: CubeFamily) -> bool:
    return all(is_down_in(F, i) for i in range(F.n))


def is_up_set(F: CubeFamily) -> bool:
    return all((F.mask & ~dir_mask(F.n, i)) << (1 << i) & ~F.mask == 0 for i in range(F.n))


@dataclass(frozen=True)
class PairedCheck:
    ok: bool
    boundary: int
    boundary_c: int
    boundary_d: int


def paired_inequality_check(F: CubeFamily, i: int) -> PairedCheck:
    b = directed_boundary(F)
    bc = directed_boundary(c_compress(F, i))
    bd = directed_boundary(d_compress(F, i))
    # 2b >= bc + bd implies the min inequality as well
    return PairedCheck(2 * b >= bc + bd and bc + bd >= 2 * min(bc, bd), b, bc, bd)


def find_single_counterexample(op: str, max_n: int = 5, seed: int = 0, samples: int = 20000):
    """A family whose boundary grows under one compression alone.

    Exhaustive for n <= 3, sampled above.  Returns ``(F, i)`` or None.
    """
    comp = {"C": c_compress, "D": d_compress}[op]
    rng = random.Random(seed)
    for n in range(1, max_n + 1):
        fams = range(1 << (1 << n)) if n <= 3 else (rng.getrandbits(1 << n) for _ in range(samples))
        for m in fams:
            F = CubeFamily(n, m)
            b = directed_boundary(F)
            for i in range(n):
                if directed_boundary(comp(F, i)) > b:
                    return F, i
    return None


# -- vectorised sweep ----------------------------------------------------------------

def _np_boundary(fams: np.ndarray, n: int) -> np.ndarray:
    """fams: bool (m, 2^n).  Upward boundary per row."""
    S = np.arange(1 << n)
    total = np.zeros(fams.shape[0], dtype=np.int64)
    for i in range(n):
        low = S[(S >> i) & 1 == 0]
        total += (fams[:, low] & ~fams[:, low | (1 << i)]).sum(axis=1)
    return total


def _np_compress(fams: np.ndarray, n: int, i: int, kind: str) -> np.ndarray:
    S = np.arange(1 << n)
    low = S[(S >> i) & 1 == 0]
    high = low | (1 << i)
    out = fams.copy()
    if kind == "C":
        out[:, high] = fams[:, high] & fams[:, low]
    else:
        out[:, low] = fams[:, low] | fams[:, high]
    return out


def random_families(n: int, count: int, seed: int) -> np.ndarray:
    """Uniform random families: each subset a member with probability 1/2."""
    return np.random.default_rng(seed).integers(0, 2, size=(count, 1 << n)).astype(bool)


def paired_sweep(fams: np.ndarray, n: int, block: int = 20000) -> int:
    """Number of (family, direction) pairs where the paired inequality fails."""
    bad = 0
    for start in range(0, fams.shape[0], block):
        F = fams[start:start + block]
        b = _np_boundary(F, n)
        for i in range(n):
            bc = _np_boundary(_np_compress(F, n, i, "C"), n)
            bd = _np_boundary(_np_compress(F, n, i, "D"), n)
            bad += int(((2 * b < bc + bd) | (bc + bd < 2 * np.minimum(bc, bd))).sum())
    return bad


def exhaustive_families(n: int) -> np.ndarray:
    return np.array(list(product([False, True], repeat=1 << n)), dtype=bool)[:, ::-1]


# -- edge-disjoint upward paths ------------------------------------------------------

class FlowPreconditionError(ValueError):
    pass


def _check_flow_inputs(n: int, A: CubeFamily, B: CubeFamily) -> None:
    if A.n != n or B.n != n:
        raise FlowPreconditionError("families live in different cubes")
    if not is_down_set(A):
        raise FlowPreconditionError("A is not a down-set")
    if not is_up_set(B):
        raise FlowPreconditionError("B is not an up-set")
    if A.mask & B.mask:
        raise FlowPreconditionError("A and B intersect")


def edge_disjoint_upward_paths(A: CubeFamily, B: CubeFamily):
    """Maximum number of edge-disjoint upward paths from A to B.

    Unit-capacity max flow by BFS augmenting paths in the residual graph,
    with every vertex of A a source and every vertex of B a sink.
    Returns ``(value, paths, cut)``: paths are vertex lists; ``cut`` is the
    residual-reachable vertex set, whose upward boundary equals the value.
    """
    n = A.n
    _check_flow_inputs(n, A, B)
    flow: set[tuple[int, int]] = set()  # saturated upward edges (u, u | bit)
    sources = A.members()
    while True:
        parent = {s: None for s in sources}
        dq = deque(sources)
        hit = None
        while dq and hit is None:
            u = dq.popleft()
            for i in range(n):
                w = u ^ (1 << i)
                if w in parent:
                    continue
                if w > u and (u, w) not in flow:
                    parent[w] = u
                elif w < u and (w, u) in flow:
                    parent[w] = u
                else:
                    continue
                if w in B:
                    hit = w
                    break
                dq.append(w)
        if hit is None:
            break
        w = hit
        while parent[w] is not None:
            u = parent[w]
            if w > u:
                flow.add((u, w))
            else:
                flow.discard((w, u))
            w = u
    cut = CubeFamily.of(n, parent)
    paths = _decompose(n, flow, A, B)
    if len(paths) != directed_boundary(cut):
        raise RuntimeError("flow value and cut capacity disagree")
    return len(paths), paths, cut


def _decompose(n: int, flow: set, A: CubeFamily, B: CubeFamily) -> list[list[int]]:
    out_edges: dict[int, list[int]] = {}
    net: dict[int, int] = {}
    for u, w in sorted(flow):
        out_edges.setdefault(u, []).append(w)
        net[u] = net.get(u, 0) + 1
        net[w] = net.get(w, 0) - 1
    paths = []
    for a in sorted(A.members()):
        for _ in range(max(net.get(a, 0), 0)):
            path = [a]
            u = a
            while True:
                # stop at a sink that still absorbs flow
                if u in B and net.get(u, 0) < 0:
                    net[u] += 1
                    break
                w = out_edges[u].pop()
                path.append(w)
                u = w
            net[a] -= 1
            paths.append(path)
    return paths


def random_down_set(n: int, size: int, rng: random.Random) -> CubeFamily:
    members: set[int] = set()
    while len(members) < size:
        cands = [S for S in range(1 << n) if S not in members
                 and all((S & ~(1 << i)) in members for i in range(n) if (S >> i) & 1)]
        members.add(rng.choice(cands))
    return CubeFamily.of(n, members)


def random_up_set(n: int, size: int, avoid: CubeFamily, rng: random.Random) -> CubeFamily:
    members: set[int] = set()
    while len(members) < size:
        cands = [S for S in range(1 << n) if S not in members and S not in avoid
                 and all((S | (1 << i)) in members for i in range(n) if not (S >> i) & 1)]
        if not cands:
            raise ValueError("no room for an up-set of that size")
        members.add(rng.choice(cands))
    return CubeFamily.of(n, members)


def random_flow_instance(n: int, k: int, seed: int):
    """Down-set A and disjoint up-set B, both of size 2^k (needs k < n)."""
    if not 0 <= k < n:
        raise ValueError("need 0 <= k < n")
    rng = random.Random(seed)
    A = random_down_set(n, 1 << k, rng)
    return A, random_up_set(n, 1 << k, A, rng)


# -- certificates --------------------------------------------------------------------

def certify_flow(A: CubeFamily, B: CubeFamily, runtime_ms: int = 0, k: int | None = None) -> Certificate:
    value, paths, cut = edge_disjoint_upward_paths(A, B)
    params = {"n": A.n}
    if k is not None:
        params["k"] = k
    return Certificate("compressions.flow", params, "exact", str(value),
                       {"A": A.bitstring(), "B": B.bitstring(), "paths": paths,
                        "cut": cut.bitstring()},
                       {"runtime_ms": runtime_ms, "boundary_definition": "upward edges leaving"})


def certify_counterexample(F: CubeFamily, i: int, op: str, runtime_ms: int = 0) -> Certificate:
    comp = c_compress if op == "C" else d_compress
    grown = directed_boundary(comp(F, i)) - directed_boundary(F)
    return Certificate("compressions.single_counterexample", {"n": F.n, "i": i, "op": op},
                       "construction", str(grown), F.bitstring(),
                       {"runtime_ms": runtime_ms, "boundary_definition": "upward edges leaving"})


def certify_paired_sweep(n: int, mode: str, count: int = 0, seed: int = 0,
                         runtime_ms: int = 0) -> Certificate:
    """Verification certificate; value is the number of failing (family, direction) pairs."""
    fams = exhaustive_families(n) if mode == "exhaustive" else random_families(n, count, seed)
    bad = paired_sweep(fams, n)
    return Certificate("compressions.paired_sweep",
                       {"n": n, "mode": mode, "count": fams.shape[0], "seed": seed},
                       "verification", str(bad), None,
                       {"runtime_ms": runtime_ms, "generator": "numpy default_rng integers(0,2)"})


def _naive_boundary(n: int, fam: set) -> int:
    return sum(1 for A in fam for i in range(n) if not (A >> i) & 1 and (A | (1 << i)) not in fam)


def _naive_c(n: int, fam: set, i: int) -> set:
    return {S for S in fam if not ((S >> i) & 1 and (S & ~(1 << i)) not in fam)}


def _naive_d(n: int, fam: set, i: int) -> set:
    return fam | {S for S in range(1 << n) if not (S >> i) & 1 and (S | (1 << i)) in fam}


def _parse_family(n: int, bits: str) -> set:
    check(len(bits) == 1 << n and set(bits) <= {"0", "1"}, "family bitstring malformed")
    return {S for S, ch in enumerate(bits) if ch == "1"}


@register_verifier("compressions.flow")
def _verify_flow(cert: Certificate) -> None:
    n = cert.p_int("n")
    A = _parse_family(n, cert.witness["A"])
    B = _parse_family(n, cert.witness["B"])
    R = _parse_family(n, cert.witness["cut"])
    check(not A & B, "A and B intersect")
    check(all((S & ~(1 << i)) in A for S in A for i in range(n)), "A is not a down-set")
    check(all((S | (1 << i)) in B for S in B for i in range(n)), "B is not an up-set")
    used = set()
    for p in cert.witness["paths"]:
        check(len(p) >= 2 and p[0] in A and p[-1] in B, "path does not run from A to B")
        for u, w in zip(p, p[1:]):
            d = w ^ u
            check(w > u and d & (d - 1) == 0 and d < 1 << n, "step is not an upward cube edge")
            check((u, w) not in used, "paths share an edge")
            used.add((u, w))
    check(str(len(cert.witness["paths"])) == cert.value, "path count differs from value")
    # max-flow optimality: a cut separating A from B with capacity equal to the value
    check(A <= R and not R & B, "cut does not separate A from B")
    check(_naive_boundary(n, R) == len(cert.witness["paths"]), "cut capacity differs from value")
    if "k" in cert.params:
        k = cert.p_int("k")
        check(len(A) == len(B) == 1 << k, "sizes are not 2^k")


@register_verifier("compressions.single_counterexample")
def _verify_counterexample(cert: Certificate) -> None:
    n, i = cert.p_int("n"), cert.p_int("i")
    fam = _parse_family(n, cert.witness)
    op = cert.params["op"]
    check(op in ("C", "D") and 0 <= i < n, "bad op or direction")
    new = _naive_c(n, fam, i) if op == "C" else _naive_d(n, fam, i)
    grown = _naive_boundary(n, new) - _naive_boundary(n, fam)
    check(grown > 0, "boundary does not grow")
    check(str(grown) == cert.value, "growth differs from value")


@register_verifier("compressions.paired_sweep")
def _verify_paired_sweep(cert: Certificate) -> None:
    n, count, seed = cert.p_int("n"), cert.p_int("count"), cert.p_int("seed")
    mode = cert.params["mode"]
    if mode == "exhaustive":
        check(count == 1 << (1 << n), "exhaustive count is not 2^(2^n)")
        masks = range(count)
    else:
        rows = np.random.default_rng(seed).integers(0, 2, size=(count, 1 << n))
        masks = (int("".join(map(str, r[::-1].tolist())), 2) for r in rows)
    bad = 0
    for m in masks:
        # independent route: Python big-int shifts instead of numpy column gathers
        F = CubeFamily(n, int(m))
        for i in range(n):
            if not paired_inequality_check(F, i).ok:
                bad += 1
    check(str(bad) == cert.value, f"recounted {bad} failures, certificate says {cert.value}")
