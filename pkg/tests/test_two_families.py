import random
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from combwork.core.certificate import Certificate, verify
from combwork.core.budget import Status
from combwork.two_families import (PairSystem, certify_construction, certify_exact_max,
                                   check_bollobas, check_conjecture, conj_bound,
                                   derived_bollobas, exact_max_bollobas, exact_max_conjecture,
                                   paper_construction)


def partitions(a, b):
    ground = set(range(1, a + b + 1))
    return PairSystem.of(a, b, [(set(A), ground - set(A)) for A in combinations(sorted(ground), a)])


def test_conj_bound_values():
    assert conj_bound(4, 4) == 14
    assert conj_bound(2, 5) == 1
    for b in range(3, 11):
        assert conj_bound(3, b) == b + 1 == comb(b + 1, 1)
    with pytest.raises(ValueError):
        conj_bound(3, 2)


def test_partition_system_is_bollobas_and_tight():
    for a, b in [(1, 1), (1, 3), (2, 2), (2, 3)]:
        S = partitions(a, b)
        assert check_bollobas(S)[0]
        assert len(S) == comb(a + b, a)


def test_bollobas_violations():
    S = PairSystem.of(1, 1, [({1}, {1})])
    assert check_bollobas(S) == (False, ("disjoint", 0))
    S = PairSystem.of(1, 1, [({1}, {2}), ({3}, {4})])
    assert check_bollobas(S)[1][0] == "cross"


@pytest.mark.parametrize("a", [2, 3, 4])
def test_construction_size_and_conditions(a):
    for b in range(a, 8):
        S = paper_construction(a, b)
        assert len(S) == conj_bound(a, b)
        assert check_conjecture(S)[0]
        assert all(A | B <= set(range(1, a + b - 1)) for A, B in S.pairs)
        assert check_bollobas(derived_bollobas(S))[0]


def test_construction_small_cases():
    S = paper_construction(2, 2)
    assert S.pairs == ((frozenset({1, 2}), frozenset({1, 2})),)
    assert len(paper_construction(3, 4)) == 5


def test_empty_cross_intersection_is_rejected():
    # A_0 & B_1 is empty, and the empty set lies in every core
    S = PairSystem.of(2, 2, [({1, 2}, {1, 2}), ({3, 4}, {3, 4})])
    ok, why = check_conjecture(S)
    assert not ok and why[0] == "triple"


def test_exact_max_conjecture_small():
    assert exact_max_conjecture(2, 2, 2)[0] == 1
    v, S, st_ = exact_max_conjecture(2, 3, 3)
    assert v == 1 == conj_bound(2, 3) and st_ is Status.EXACT
    for b in (2, 3, 4):
        for g in range(b, 6):
            v, S, _ = exact_max_conjecture(2, b, g)
            assert check_conjecture(S)[0]
            if g == b:
                assert v <= comb(b, 0)


def test_exact_max_bollobas_small():
    assert exact_max_bollobas(1, 2, 3)[0] == 3
    v, S, _ = exact_max_bollobas(2, 2, 5)
    assert v == comb(4, 2) and check_bollobas(S)[0]


def test_bollobas_size_never_exceeds_binomial():
    # exhaustive: every system of size C(a+b,a)+1 on a small ground set fails
    for a, b, g in [(1, 1, 3), (1, 2, 4)]:
        v, _, _ = exact_max_bollobas(a, b, g)
        assert v == comb(a + b, a)


@settings(max_examples=100)
@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_subfamilies_of_partitions_are_bollobas(a, b, data):
    S = partitions(a, b)
    keep = data.draw(st.sets(st.integers(0, len(S) - 1)))
    sub = PairSystem.of(a, b, [S.pairs[i] for i in sorted(keep)])
    assert check_bollobas(sub)[0]


def test_reduction_property_on_random_valid_systems():
    rng = random.Random(2)
    for a, b in [(2, 3), (3, 3), (3, 4), (4, 5)]:
        S = paper_construction(a, b)
        for _ in range(30):
            sub = PairSystem.of(a, b, rng.sample(S.pairs, rng.randint(1, len(S))))
            assert check_conjecture(sub)[0]
            assert check_bollobas(derived_bollobas(sub))[0]


def test_certificates():
    c = certify_construction(3, 5)
    assert verify(c)[0]
    v, S, st_ = exact_max_conjecture(2, 3, 4)
    assert verify(certify_exact_max(2, 3, 4, v, S, st_))[0]
    bad = Certificate(c.problem, c.params, c.kind, c.value, c.witness[:-1], c.meta)
    assert not verify(bad)[0]
