import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from combwork.core.certificate import verify
from combwork.torus_walks import (K2_VERTICES, StayPair, TorusColouring, certify_sweep, coords,
                                  conjectured_vertices, convex_hull, hull_conjecture_membership,
                                  hull_k2_membership, index, one_step_pair, stay_pair,
                                  stay_pair_walks, sweep_pairs)


def colouring(n, k, pred):
    return TorusColouring(n, k, frozenset(v for v in range(n ** k) if pred(coords(v, n, k))))


def test_checkerboard():
    c = colouring(4, 2, lambda x: sum(x) % 2 == 0)
    assert stay_pair(c).as_tuple() == (0, 0)


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_stripes_match_boundary_row_count(n):
    c = colouring(n, 2, lambda x: x[0] < n // 2)
    # interior rows keep all 4 neighbours red, the two boundary rows keep 3
    expect = Fraction((n // 2 - 2) * n * 16 + 2 * n * 9, (n * n // 2) * 16)
    sp = stay_pair(c)
    assert sp.p_R == sp.p_B == expect
    assert sp.p_R >= 1 - Fraction(8, n)


def test_unbalanced_rejected():
    with pytest.raises(ValueError):
        stay_pair(TorusColouring(2, 2, frozenset({0})))


balanced_t42 = st.sets(st.integers(0, 15), min_size=8, max_size=8).map(
    lambda s: TorusColouring(4, 2, frozenset(s)))


@settings(max_examples=200)
@given(balanced_t42)
def test_formula_matches_walk_enumeration(c):
    sp = stay_pair(c)
    assert sp == stay_pair_walks(c)
    assert stay_pair(c.complement()) == StayPair(sp.p_B, sp.p_R)
    q = one_step_pair(c)
    assert sp.p_R <= q.p_R and sp.p_B <= q.p_B
    assert 0 <= sp.p_R <= 1 and 0 <= sp.p_B <= 1
    assert hull_k2_membership(sp)


def test_hull_membership_examples():
    assert hull_k2_membership((0, 0))
    assert not hull_k2_membership((1, 0))
    assert hull_k2_membership((Fraction(1, 2), Fraction(1, 4)))
    for k in (2, 3, 4, 5):
        assert hull_conjecture_membership((1, 1), k)
    assert hull_conjecture_membership((Fraction(1, 2), Fraction(1, 2)), 3)


def test_conjectured_vertices_k2_reproduce_hull():
    assert set(conjectured_vertices(2)) == set(K2_VERTICES)
    assert convex_hull(conjectured_vertices(2)) == convex_hull(K2_VERTICES)


def test_sweep_random_is_reproducible():
    a, _ = sweep_pairs(4, 2, "random", seed=5, count=200)
    b, _ = sweep_pairs(4, 2, "random", seed=5, count=200)
    assert a == b


def test_sweep_matches_direct_computation():
    found, examined = sweep_pairs(2, 3)
    assert examined == 70
    for sp, bits in found.items():
        assert stay_pair(TorusColouring.from_bits(2, 3, bits)) == sp
    direct = {stay_pair(TorusColouring(2, 3, frozenset(r))) for r in combinations(range(8), 4)}
    assert direct == set(found)
    c = certify_sweep(2, 3, found, examined, "conjecture")
    assert verify(c)[0]


def test_bits_round_trip():
    rng = random.Random(1)
    for _ in range(20):
        red = frozenset(rng.sample(range(16), 8))
        c = TorusColouring(4, 2, red)
        assert TorusColouring.from_bits(4, 2, c.bits()) == c
    assert all(index(coords(v, 4, 3), 4) == v for v in range(64))
