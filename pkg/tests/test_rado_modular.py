import random
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from combwork import rado_modular as rm
from combwork.core.budget import SearchBudget, Status
from combwork.core.certificate import Certificate, verify
from combwork.rado_modular import (ModularInstance, bad_solutions, certify_d_table, certify_min_K,
                                   classes_of, colouring_ok, compute_d, min_K, refine)


def valuation(x, r):
    if x == 0:
        return r
    v = 0
    while x % 2 == 0:
        x //= 2
        v += 1
    return min(v, r)


def d_oracle(r, a):
    m = 1 << r
    return max(valuation(sum(sub) % m, r)
               for size in range(1, len(a) + 1) for sub in combinations(a, size))


def test_d_examples():
    assert compute_d(ModularInstance(2, (1, 1))) == 1
    assert compute_d(ModularInstance(3, (3, 5))) == 3
    for r in range(1, 6):
        assert compute_d(ModularInstance(r, (1,))) == 0


def test_instance_reduces_residues():
    assert ModularInstance(2, (5, -1)).a == (1, 3)
    with pytest.raises(ValueError):
        ModularInstance(2, ())


def test_d_matches_oracle_on_all_small_instances():
    for r in range(1, 5):
        for k in range(1, 5):
            for a in product(range(1 << r), repeat=k):
                assert compute_d(ModularInstance(r, a)) == d_oracle(r, a)


def test_colouring_examples():
    assert colouring_ok([0, 0], ModularInstance(1, (1, 1)))[0]
    inst = ModularInstance(2, (1, 1))
    ok, x = colouring_ok([0, 0, 0, 0], inst)
    assert not ok and x == (1, 3)
    assert colouring_ok([0, 0, 0, 1], inst)[0]
    with pytest.raises(ValueError):
        colouring_ok([0, 0], inst)


def test_bad_solutions_are_solutions():
    inst = ModularInstance(3, (1, 2, 5))
    d = compute_d(inst)
    for x in bad_solutions(inst):
        assert sum(p * q for p, q in zip(inst.a, x)) % 8 == 0
        assert any(xi % (1 << (3 - d)) for xi in x)


def test_guard():
    with pytest.raises(ValueError):
        bad_solutions(ModularInstance(8, (1, 1, 1)))


def test_min_K_examples():
    K, colour, status = min_K(ModularInstance(2, (1, 1)))
    assert (K, status) == (2, Status.EXACT)
    assert colouring_ok(colour, ModularInstance(2, (1, 1)))[0]
    for a in [(1,), (1, 1), (1, 1, 1)]:
        inst = ModularInstance(1, a)
        if compute_d(inst) == 1:
            assert min_K(inst)[0] == 1


def brute_min_K(inst, K_max):
    m = inst.modulus
    for K in range(1, K_max + 1):
        if any(colouring_ok(list(c), inst)[0] for c in product(range(K), repeat=m)):
            return K
    return None


def test_min_K_matches_brute_force():
    rng = random.Random(3)
    for _ in range(25):
        r = rng.randint(1, 3)
        k = rng.randint(1, 3 if r < 3 else 2)
        inst = ModularInstance(r, tuple(rng.randrange(1 << r) for _ in range(k)))
        K_max = 3 if r == 3 else 4
        K, colour, status = min_K(inst, K_max)
        assert status is Status.EXACT
        assert K == brute_min_K(inst, K_max)
        if K is not None:
            assert colouring_ok(colour, inst)[0]


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.lists(st.integers(0, 7), min_size=1, max_size=2), st.data())
def test_refinement_never_hurts(r, a, data):
    inst = ModularInstance(r, tuple(a))
    m = inst.modulus
    colour = data.draw(st.lists(st.integers(0, 2), min_size=m, max_size=m))
    x = data.draw(st.integers(0, m - 1))
    if colouring_ok(colour, inst)[0]:
        assert colouring_ok(refine(colour, x), inst)[0]


def test_classes_of():
    assert classes_of([1, 0, 1, 2]) == [[1], [0, 2], [3]]


def test_certificates():
    c = certify_min_K(ModularInstance(2, (1, 1)))
    assert c.value == "2" and verify(c)[0]
    bad = Certificate(c.problem, c.params, c.kind, "1", [[0, 1, 2, 3]], c.meta)
    assert not verify(bad)[0]
    t = certify_d_table(2, 2)
    assert verify(t)[0]
    rows = [list(row) for row in t.witness]
    rows[0][2] += 1
    assert not verify(Certificate(t.problem, t.params, t.kind, t.value, rows, t.meta))[0]


def test_budget():
    K, colour, status = min_K(ModularInstance(3, (1, 1, 1)), 4, SearchBudget(node_limit=3))
    assert status is Status.BOUND and K is None
