import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from combwork.core.certificate import Certificate, verify
from combwork.core.budget import SearchBudget, Status
from combwork.cube import Subcube, all_subcubes, count_subcubes, subcubes_within
from combwork.cube_turan import (SubcubeSet, certify_construction, certify_exact, construct,
                                 density, density_profile, exact_ex, forbidden_dimension,
                                 is_free, naive_free)


def test_full_shadow_of_a_three_cube_is_not_free():
    S = SubcubeSet.of(4, 2, subcubes_within(Subcube.parse("0***"), 2))
    ok, t = is_free(S, 3)
    assert not ok and str(t) == "0***"


def test_constructions_are_free():
    assert is_free(construct("C13", 5), 3)[0]
    assert is_free(construct("C2", 6, m=1), 5)[0]
    # weights 0 and 4 are excluded: 16 - 1 - 1
    assert len(construct("weight_mod4_k0", 4)) == 14
    assert is_free(construct("weight_mod4_k0", 6), 3)[0]
    assert is_free(construct("D2", 6, d=2), 3)[0]


def test_construction_argument_errors():
    with pytest.raises(ValueError):
        construct("nope", 4)
    with pytest.raises(ValueError):
        construct("D2", 4)
    with pytest.raises(ValueError):
        is_free(construct("C13", 3), 5)


def test_subcube_set_rejects_wrong_dimension():
    with pytest.raises(ValueError):
        SubcubeSet.of(3, 1, [Subcube.parse("0**")])


def test_is_free_matches_naive_on_random_sets():
    rng = random.Random(11)
    for _ in range(500):
        n = rng.randint(2, 5)
        k = rng.randint(0, min(2, n - 1))
        d = rng.randint(k + 1, n)
        ks = all_subcubes(n, k)
        members = {s for s in ks if rng.random() < rng.choice((0.5, 0.8, 0.95))}
        assert is_free(SubcubeSet.of(n, k, members), d)[0] == naive_free(n, k, d, members)


@pytest.mark.parametrize("n,k,d,value", [
    (2, 0, 1, 2), (3, 0, 1, 4), (4, 0, 1, 8), (2, 0, 2, 3), (3, 0, 2, 6), (4, 0, 2, 11),
    (3, 1, 2, 9), (3, 0, 3, 7), (4, 0, 3, 14), (3, 1, 3, 11), (3, 2, 3, 5),
])
def test_exact_small_values(n, k, d, value):
    res = exact_ex(n, k, d)
    assert res.status is Status.EXACT and res.value == value
    assert naive_free(n, k, d, set(res.witness.members))
    assert res.density == Fraction(value, count_subcubes(n, k))


def test_ex_equals_total_minus_one_when_d_equals_n():
    # a single d-subcube is forbidden: drop one k-subcube of it
    for n in range(1, 4):
        for k in range(n + 1):
            assert exact_ex(n, k, n).value == count_subcubes(n, k) - 1


def test_densities_non_increasing():
    for k, d, ns in [(0, 1, range(1, 6)), (0, 2, range(2, 6)), (0, 3, range(3, 6)), (1, 2, range(2, 5))]:
        dens = [exact_ex(n, k, d).density for n in ns]
        assert all(a >= b for a, b in zip(dens, dens[1:]))


def test_budget_gives_bound():
    res = exact_ex(5, 0, 2, SearchBudget(node_limit=5))
    assert res.status is Status.BOUND
    assert naive_free(5, 0, 2, set(res.witness.members))


def test_density_profile_types():
    prof = density_profile("C13", range(3, 6))
    assert [n for n, _ in prof] == [3, 4, 5]
    assert all(isinstance(q, Fraction) and 0 < q < 1 for _, q in prof)
    assert forbidden_dimension("C2", m=2) == 8


def test_certificates_verify_and_detect_tampering():
    c = certify_exact(exact_ex(3, 0, 2))
    assert c.kind == "exact" and verify(c)[0]
    bad = Certificate.from_json(c.to_json().replace('"6"', '"7"'))
    assert not verify(bad)[0]
    cc = certify_construction("C13", 5)
    assert cc.kind == "construction" and verify(cc)[0]
    # a non-free witness cannot pass as a construction
    tampered = Certificate(cc.problem, cc.params, cc.kind, str(count_subcubes(5, 1)),
                           sorted(str(s) for s in all_subcubes(5, 1)), cc.meta)
    assert not verify(tampered)[0]


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4), st.data())
def test_freeness_is_hereditary(n, data):
    S = construct("C13", n) if n >= 3 else construct("C13", 3)
    members = sorted(S.members)
    drop = data.draw(st.sets(st.sampled_from(members)))
    sub = SubcubeSet.of(S.n, 1, set(members) - drop)
    assert is_free(sub, 3)[0]


def test_weight_mod4_density_near_three_quarters():
    for n in range(8, 15):
        assert abs(density(construct("weight_mod4_k0", n)) - Fraction(3, 4)) <= Fraction(2, n)


def test_c13_density_identity():
    for n in range(1, 7):
        both_even = sum(1 for s in all_subcubes(n, 1)
                        if (bin(s.values & ((1 << s.flip_bits()[0]) - 1)).count("1") % 2 == 0
                            and bin(s.values >> s.flip_bits()[0]).count("1") % 2 == 0))
        assert density(construct("C13", n)) == 1 - Fraction(both_even, n * 2 ** (n - 1))


def test_d2_density_trend():
    prof = density_profile("D2", range(4, 11), d=2)
    assert all(q >= Fraction(3, 4) for _, q in prof)
    assert prof[-1][1] - Fraction(3, 4) < prof[0][1] - Fraction(3, 4)


def test_empty_set_is_free():
    for d in range(0, 4):
        assert is_free(SubcubeSet.of(3, 0, []), d)[0]
