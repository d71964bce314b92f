import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from combwork.core.certificate import Certificate, verify
from combwork.no_three_in_line import (certify, density_profile, from_csv, greedy_extend,
                                       is_prime, modular_parabola, row_column_ok, scan_order,
                                       to_csv, verify_no3, verify_no3_cubic)


def test_examples():
    assert not verify_no3([(1, 1), (2, 2), (3, 3)])[0]
    assert verify_no3([(1, 1), (2, 3), (3, 2)])[0]
    P = modular_parabola(5)
    assert [(x - 1, y - 1) for x, y in P] == [(0, 0), (1, 1), (2, 4), (3, 4), (4, 1)]
    assert verify_no3(P)[0]
    with pytest.raises(ValueError):
        modular_parabola(4)


def test_violation_triple_is_collinear():
    ok, (p, q, r) = verify_no3([(1, 1), (5, 2), (3, 3), (9, 3)])
    assert not ok
    assert (q[1] - p[1]) * (r[0] - p[0]) == (r[1] - p[1]) * (q[0] - p[0])


@pytest.mark.parametrize("p", [q for q in range(2, 102) if is_prime(q)])
def test_parabola_primes(p):
    P = modular_parabola(p)
    assert len(P) == p
    assert verify_no3(P)[0]
    assert row_column_ok(P)


points = st.lists(st.tuples(st.integers(1, 7), st.integers(1, 7)), max_size=12)


@settings(max_examples=500)
@given(points)
def test_fast_check_matches_cross_product_oracle(S):
    assert verify_no3(S)[0] == verify_no3_cubic(S)


def test_greedy_small_grids():
    assert len(greedy_extend([], 2)) == 4
    G3 = greedy_extend([], 3)
    assert len(G3) <= 6 and verify_no3(G3)[0]


@pytest.mark.parametrize("order", ["row-major", "spiral", "random"])
def test_greedy_is_valid_and_maximal(order):
    n = 9
    G = greedy_extend([], n, order, seed=3)
    assert verify_no3(G)[0] and row_column_ok(G)
    assert len(G) <= 2 * n
    rest = set(product(range(1, n + 1), repeat=2)) - set(G)
    assert all(not verify_no3(G + [p])[0] for p in rest)


def test_greedy_keeps_seed_set():
    P = modular_parabola(7)
    G = greedy_extend(P, 10)
    assert G[:7] == P and verify_no3(G)[0]
    with pytest.raises(ValueError):
        greedy_extend([(1, 1), (2, 2), (3, 3)], 4)


def test_spiral_prefixes():
    order = scan_order(6, "spiral")
    for s in range(1, 7):
        assert set(order[: s * s]) == set(product(range(1, s + 1), repeat=2))


def test_density_profile():
    assert density_profile(modular_parabola(7), 7)[-1] == (7, Fraction(1))
    assert all(q == 0 for _, q in density_profile([], 5))


def test_csv_round_trip_and_certificate():
    G = greedy_extend([], 12)
    assert sorted(from_csv(to_csv(G))) == sorted(G)
    c = certify(G, "greedy", 12, order="row-major")
    assert c.kind == "construction" and verify(c)[0]
    w = c.witness + [[1, 1]] if [1, 1] not in c.witness else c.witness + [[12, 12]]
    bad = Certificate(c.problem, c.params, c.kind, str(len(w)), w, c.meta)
    assert not verify(bad)[0]
