import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from combwork import compressions as cp
from combwork.compressions import (CubeFamily, FlowPreconditionError, c_compress,
                                   certify_counterexample, certify_flow, certify_paired_sweep,
                                   complement_image, d_compress, directed_boundary,
                                   downward_entering, edge_disjoint_upward_paths,
                                   exhaustive_families, find_single_counterexample, is_down_in,
                                   is_down_set, is_up_set, paired_inequality_check, paired_sweep,
                                   random_families, random_flow_instance)
from combwork.core.certificate import Certificate, verify

families = st.integers(1, 4).flatmap(
    lambda n: st.builds(CubeFamily, st.just(n), st.integers(0, 2 ** (2 ** n) - 1)))


def naive_boundary(F):
    ms = set(F.members())
    return sum(1 for A in ms for i in range(F.n) if not (A >> i) & 1 and A | (1 << i) not in ms)


def test_boundary_examples():
    assert directed_boundary(CubeFamily(3, 0)) == 0
    assert directed_boundary(CubeFamily.of(4, [0])) == 4
    assert directed_boundary(CubeFamily.of(3, [0, 1, 2, 4])) == 6


def test_compression_examples():
    one = CubeFamily.of(2, [0b01])
    assert c_compress(one, 0).mask == 0
    assert d_compress(one, 0) == CubeFamily.of(2, [0b00, 0b01])
    down = CubeFamily.of(3, [0, 1, 2, 3])
    for i in range(3):
        assert c_compress(down, i) == down == d_compress(down, i)


@settings(max_examples=400)
@given(families, st.data())
def test_compression_properties(F, data):
    i = data.draw(st.integers(0, F.n - 1))
    C, D = c_compress(F, i), d_compress(F, i)
    assert is_down_in(C, i) and is_down_in(D, i)
    assert len(C) <= len(F) <= len(D)
    assert C.mask & ~F.mask == 0 and F.mask & ~D.mask == 0
    # same-direction compressions are idempotent
    assert c_compress(C, i) == C and d_compress(D, i) == D
    assert c_compress(d_compress(F, i), i) == d_compress(F, i)
    ms = set(F.members())
    assert set(C.members()) == {S for S in ms if not ((S >> i) & 1 and S & ~(1 << i) not in ms)}
    assert set(D.members()) == ms | {S for S in range(1 << F.n)
                                     if not (S >> i) & 1 and S | (1 << i) in ms}


@settings(max_examples=400)
@given(families)
def test_boundary_duality(F):
    b = directed_boundary(F)
    assert b == naive_boundary(F)
    assert b == downward_entering(F) == directed_boundary(complement_image(F))


@settings(max_examples=300)
@given(families, st.data())
def test_paired_inequality(F, data):
    i = data.draw(st.integers(0, F.n - 1))
    r = paired_inequality_check(F, i)
    assert r.ok
    assert 2 * r.boundary >= r.boundary_c + r.boundary_d >= 2 * min(r.boundary_c, r.boundary_d)


def test_paired_inequality_exhaustive_q3():
    fams = exhaustive_families(3)
    assert fams.shape == (256, 8)
    assert paired_sweep(fams, 3) == 0
    bad = 0
    for m in range(256):
        F = CubeFamily(3, m)
        bad += sum(not paired_inequality_check(F, i).ok for i in range(3))
    assert bad == 0


def test_numpy_route_matches_bigint_route():
    fams = random_families(4, 300, seed=7)
    b = cp._np_boundary(fams, 4)
    for row, val in zip(fams, b):
        F = CubeFamily(4, sum(1 << S for S in range(16) if row[S]))
        assert directed_boundary(F) == val
        for i in range(4):
            for kind, op in (("C", c_compress), ("D", d_compress)):
                got = cp._np_compress(row[None, :], 4, i, kind)[0]
                assert sum(1 << S for S in range(16) if got[S]) == op(F, i).mask


def test_single_compression_counterexamples():
    for op, comp in (("C", c_compress), ("D", d_compress)):
        F, i = find_single_counterexample(op)
        assert F.n <= 5
        assert directed_boundary(comp(F, i)) > directed_boundary(F)
        assert verify(certify_counterexample(F, i, op))[0]


def nx_flow(A, B):
    n = A.n
    G = nx.DiGraph()
    for u in range(1 << n):
        for i in range(n):
            if not (u >> i) & 1:
                G.add_edge(u, u | (1 << i), capacity=1)
    for a in A.members():
        G.add_edge("s", a, capacity=n + 1)
    for b in B.members():
        G.add_edge(b, "t", capacity=n + 1)
    return nx.maximum_flow_value(G, "s", "t")


def check_paths(A, B, paths):
    used = set()
    for p in paths:
        assert p[0] in A and p[-1] in B
        for u, w in zip(p, p[1:]):
            assert w > u and bin(w ^ u).count("1") == 1
            assert (u, w) not in used
            used.add((u, w))


def test_flow_bottom_to_top():
    A, B = CubeFamily.of(4, [0]), CubeFamily.of(4, [15])
    value, paths, cut = edge_disjoint_upward_paths(A, B)
    assert value == 4
    check_paths(A, B, paths)


def test_flow_half_cubes():
    n = 4
    top = 1 << (n - 1)
    A = CubeFamily.of(n, [S for S in range(1 << n) if not S & top])
    B = CubeFamily.of(n, [S for S in range(1 << n) if S & top])
    value, paths, _ = edge_disjoint_upward_paths(A, B)
    assert value == 2 ** (n - 1) == nx_flow(A, B)


@pytest.mark.parametrize("seed", range(30))
def test_flow_matches_networkx_and_bound(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    k = rng.randint(0, n - 1)
    try:
        A, B = random_flow_instance(n, k, seed)
    except ValueError:
        pytest.skip("no room for the up-set")
    value, paths, cut = edge_disjoint_upward_paths(A, B)
    assert value == nx_flow(A, B)
    assert value >= 2 ** k * (n - k)
    check_paths(A, B, paths)
    assert directed_boundary(cut) == value
    assert A.mask & ~cut.mask == 0 and not cut.mask & B.mask


def test_flow_monotone_in_sinks():
    for seed in range(10):
        A, B = random_flow_instance(5, 1, seed)
        base = edge_disjoint_upward_paths(A, B)[0]
        extra = [S for S in range(32) if S not in B and S not in A
                 and all(S | (1 << i) in B for i in range(5) if not (S >> i) & 1)]
        if extra:
            B2 = CubeFamily(5, B.mask | (1 << extra[0]))
            assert edge_disjoint_upward_paths(A, B2)[0] >= base


def test_flow_preconditions():
    down = CubeFamily.of(3, [0])
    with pytest.raises(FlowPreconditionError):
        edge_disjoint_upward_paths(CubeFamily.of(3, [1]), CubeFamily.of(3, [7]))
    with pytest.raises(FlowPreconditionError):
        edge_disjoint_upward_paths(down, CubeFamily.of(3, [3]))
    with pytest.raises(FlowPreconditionError):
        edge_disjoint_upward_paths(CubeFamily(3, 255), CubeFamily.of(3, [7]))


def test_random_instance_shapes():
    A, B = random_flow_instance(6, 2, 3)
    assert is_down_set(A) and is_up_set(B) and len(A) == len(B) == 4
    assert not A.mask & B.mask


def test_certificates_and_tampering():
    A, B = random_flow_instance(5, 1, 4)
    c = certify_flow(A, B, k=1)
    assert verify(c)[0]
    w = dict(c.witness)
    w["paths"] = w["paths"][:-1]
    assert not verify(Certificate(c.problem, c.params, c.kind, c.value, w, c.meta))[0]
    assert not verify(Certificate(c.problem, c.params, c.kind, str(int(c.value) + 1),
                                  c.witness, c.meta))[0]
    s = certify_paired_sweep(3, "exhaustive")
    assert s.value == "0" and verify(s)[0]
    r = certify_paired_sweep(4, "random", count=2000, seed=1)
    assert verify(r)[0]


def test_bitstring_round_trip():
    F = CubeFamily(3, 0b10110001)
    assert CubeFamily.from_bitstring(3, F.bitstring()) == F
    with pytest.raises(ValueError):
        CubeFamily.from_bitstring(3, "0101")
