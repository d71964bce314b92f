import random
from itertools import combinations, product
from math import comb

import networkx as nx
import pytest

from combwork.core.certificate import Certificate, verify
from combwork.core.budget import Status
from combwork.graph_intersect import (EDGE, K4, P3, TRIANGLE, LabeledGraph, Pattern,
                                      certify_g, chromatic_number, contains_copy, exact_chromatic_g,
                                      exact_g, is_chromatic_intersecting, is_H_intersecting,
                                      pair_index, trivial_family)


def complete(n):
    return LabeledGraph.from_edges(n, combinations(range(n), 2))


def cycle(n):
    return LabeledGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def test_contains_copy_examples():
    assert contains_copy(complete(4), TRIANGLE)
    matching = LabeledGraph.from_edges(4, [(0, 1), (2, 3)])
    assert not contains_copy(matching, Pattern.parse("1-2,2-3"))
    assert not contains_copy(cycle(5), TRIANGLE)
    assert not contains_copy(complete(3), K4)


def test_contains_copy_matches_networkx_monomorphism():
    rng = random.Random(4)
    for _ in range(150):
        n = rng.randint(3, 6)
        G = LabeledGraph(n, rng.getrandbits(comb(n, 2)))
        H = rng.choice([EDGE, TRIANGLE, P3, K4, Pattern.parse("1-2,2-3")])
        NG = nx.Graph()
        NG.add_nodes_from(range(n))
        NG.add_edges_from(G.edges())
        NH = nx.Graph(list(H.edges))
        gm = nx.algorithms.isomorphism.GraphMatcher(NG, NH)
        assert contains_copy(G, H) == gm.subgraph_is_monomorphic()


def test_pattern_parse():
    assert str(TRIANGLE) == "1-2,1-3,2-3"
    with pytest.raises(ValueError):
        Pattern.parse("1-1")
    with pytest.raises(ValueError):
        Pattern.parse("")


def test_intersecting_examples():
    F = trivial_family(4, TRIANGLE)
    assert len(F) == 8 and is_H_intersecting(F, TRIANGLE)[0]
    G = LabeledGraph.from_edges(4, [(0, 1), (1, 2)])
    assert not is_H_intersecting([G, G.complement()], EDGE)[0]
    assert is_H_intersecting([], TRIANGLE)[0]


@pytest.mark.parametrize("n", range(2, 7))
@pytest.mark.parametrize("H", [EDGE, P3, TRIANGLE, K4])
def test_trivial_family_sizes(n, H):
    if H.v > n:
        return
    F = trivial_family(n, H)
    assert len(F) == 2 ** (comb(n, 2) - len(H.edges))


def test_edge_intersecting_is_pairwise_intersecting():
    rng = random.Random(9)
    for _ in range(200):
        n = rng.randint(2, 5)
        F = [LabeledGraph(n, rng.getrandbits(comb(n, 2))) for _ in range(rng.randint(1, 5))]
        oracle = all(set(a.edges()) & set(b.edges()) for a in F for b in F)
        assert is_H_intersecting(F, EDGE)[0] == bool(oracle)


def test_chromatic_number_matches_brute_force():
    rng = random.Random(1)
    for _ in range(60):
        n = rng.randint(1, 6)
        G = LabeledGraph(n, rng.getrandbits(comb(n, 2)) if n > 1 else 0)
        chi = chromatic_number(G)
        brute = next(k for k in range(1, n + 1)
                     if any(all(c[u] != c[v] for u, v in G.edges())
                            for c in product(range(k), repeat=n)))
        assert chi == brute


def test_chromatic_intersecting_examples():
    assert is_chromatic_intersecting([complete(5)], 5)
    K3_up = trivial_family(4, TRIANGLE)
    assert is_chromatic_intersecting(K3_up, 3)
    bip = LabeledGraph.from_edges(4, [(0, 2), (1, 3), (0, 3)])
    assert not is_chromatic_intersecting([complete(4), bip], 3)


@pytest.mark.parametrize("n,H,value", [
    (3, TRIANGLE, 1), (4, TRIANGLE, 8), (3, EDGE, 4), (4, EDGE, 32), (4, P3, 8), (4, K4, 1),
])
def test_exact_g(n, H, value):
    v, fam, status = exact_g(n, H)
    assert status is Status.EXACT and v == value
    assert is_H_intersecting(fam, H)[0]
    assert v <= 2 ** (comb(n, 2) - 1)
    if H == TRIANGLE:
        assert v <= 2 ** (comb(n, 2) - 2)
    c = certify_g(n, H, v, fam, status)
    assert verify(c)[0]


def test_exact_g_guard():
    with pytest.raises(ValueError):
        exact_g(6, TRIANGLE)


def test_exact_chromatic_g():
    v, fam, _ = exact_chromatic_g(4, 3)
    assert is_chromatic_intersecting(fam, 3)
    assert v >= len(trivial_family(4, TRIANGLE))


def test_tampered_family_rejected():
    v, fam, status = exact_g(4, TRIANGLE)
    c = certify_g(4, TRIANGLE, v, fam, status)
    w = list(c.witness)
    w[0] = "110000"
    assert not verify(Certificate(c.problem, c.params, c.kind, c.value, w, c.meta))[0]
