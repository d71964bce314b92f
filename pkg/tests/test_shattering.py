from itertools import combinations, permutations
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from combwork.core.budget import Status
from combwork.core.certificate import Certificate, verify
from combwork.shattering import (EXAMPLE_S5, PermFamily, certify_example, certify_family,
                                 failing_subsets, greedy_family, identity_reversal, induced_order,
                                 min_family, min_orders, orders_induced, parse_perm, perm_str,
                                 t_shatters_all)


def test_s5_example():
    assert len(orders_induced(EXAMPLE_S5, (2, 3, 5))) == 6
    got = orders_induced(EXAMPLE_S5, (1, 4, 5))
    assert len(got) == 5
    assert set(permutations((1, 4, 5))) - got == {(4, 5, 1)}
    assert t_shatters_all(EXAMPLE_S5, 3, 4) == (True, None)
    ok, X = t_shatters_all(EXAMPLE_S5, 3, 6)
    assert not ok and len(orders_induced(EXAMPLE_S5, X)) < 6
    assert (1, 4, 5) in failing_subsets(EXAMPLE_S5, 3, 6)


def test_s5_certificate():
    c = certify_example(EXAMPLE_S5, 3, [(2, 3, 5), (1, 4, 5)])
    assert verify(c)[0] and c.value == "4"
    rows = [dict(r) for r in c.witness["claims"]]
    rows[1]["missing"] = []
    bad = Certificate(c.problem, c.params, c.kind, c.value,
                      {"perms": c.witness["perms"], "claims": rows}, c.meta)
    assert not verify(bad)[0]


def test_identity_gives_one_order():
    P = PermFamily.of(5, [tuple(range(1, 6))])
    assert all(len(orders_induced(P, X)) == 1 for X in combinations(range(1, 6), 3))


def test_identity_reversal_two_shatters():
    for n in range(2, 8):
        for k in range(2, min(n, 4) + 1):
            assert t_shatters_all(identity_reversal(n), k, 2)[0]


def test_validation():
    with pytest.raises(ValueError):
        PermFamily.of(3, [(1, 1, 2)])
    with pytest.raises(ValueError):
        t_shatters_all(EXAMPLE_S5, 3, 7)
    with pytest.raises(ValueError):
        orders_induced(EXAMPLE_S5, (1, 9))
    assert parse_perm(perm_str((2, 4, 1, 5, 3))) == (2, 4, 1, 5, 3)
    with pytest.raises(ValueError):
        parse_perm("2,4,1")


perm_lists = st.integers(3, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.permutations(range(1, n + 1)), min_size=1, max_size=6)))


@settings(max_examples=200)
@given(perm_lists, st.data())
def test_order_count_bounds_and_monotonicity(npl, data):
    n, perms = npl
    P = PermFamily.of(n, perms)
    k = data.draw(st.integers(1, n))
    X = data.draw(st.sets(st.integers(1, n), min_size=k, max_size=k))
    got = orders_induced(P, X)
    assert len(got) <= min(len(P), factorial(k))
    extra = data.draw(st.permutations(range(1, n + 1)))
    assert got <= orders_induced(PermFamily.of(n, perms + [extra]), X)


def test_induced_order_by_position():
    assert induced_order((2, 4, 1, 5, 3), (1, 4, 5)) == (4, 1, 5)


@pytest.mark.parametrize("n", range(3, 7))
@pytest.mark.parametrize("k", [1, 2, 3])
def test_min_family_t1_t2(n, k):
    assert min_family(n, k, 1)[0] == 1
    if factorial(k) >= 2:
        size, P, status = min_family(n, k, 2)
        assert size == 2 and status is Status.EXACT
        assert t_shatters_all(P, k, 2)[0]


def brute_min(n, k, t):
    perms = list(permutations(range(1, n + 1)))
    ident = perms[0]
    for m in range(1, len(perms) + 1):
        for rest in combinations(perms[1:], m - 1):
            if t_shatters_all(PermFamily.of(n, (ident,) + rest), k, t)[0]:
                return m


@pytest.mark.parametrize("n,k,t", [(3, 3, 3), (3, 3, 4), (4, 3, 3), (4, 3, 4), (4, 2, 2), (4, 3, 5)])
def test_min_family_matches_brute_force(n, k, t):
    size, P, status = min_family(n, k, t)
    assert status is Status.EXACT
    assert t_shatters_all(P, k, t)[0] and len(P) == size
    assert size == brute_min(n, k, t)


def test_min_family_n5_t4_at_most_example_family():
    size, P, status = min_family(5, 3, 4)
    assert status is Status.EXACT and size <= len(EXAMPLE_S5)
    assert t_shatters_all(P, 3, 4)[0]


def test_min_family_monotone():
    table = {(n, t): min_family(n, 3, t)[0] for n in (4, 5) for t in (3, 4, 5)}
    for n in (4, 5):
        assert table[(n, 3)] <= table[(n, 4)] <= table[(n, 5)]
    for t in (3, 4, 5):
        assert table[(4, t)] <= table[(5, t)]


def test_greedy_family_valid():
    P = greedy_family(8, 3, 4, seed=1)
    assert t_shatters_all(P, 3, 4)[0]
    size, P2, status = min_family(8, 3, 4)
    assert status is Status.BOUND and t_shatters_all(P2, 3, 4)[0]


def test_family_certificates():
    size, P, status = min_family(4, 3, 4)
    c = certify_family(P, 3, 4, status)
    assert c.kind == "exact" and verify(c)[0]
    # a valid but non-minimal family cannot pass as exact
    bigger = PermFamily.of(4, list(P.perms) + [p for p in permutations(range(1, 5))
                                               if p not in P.perms][:1])
    fake = Certificate(c.problem, c.params, "exact", str(len(bigger)),
                       [perm_str(p) for p in bigger.perms], c.meta)
    assert not verify(fake)[0]
    assert min_orders(EXAMPLE_S5, 3) == 4
