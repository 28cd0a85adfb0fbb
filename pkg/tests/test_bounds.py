import random

from hypothesis import given, settings
from hypothesis import strategies as st
from fractions import Fraction

import pytest

from cycleramsey.bounds import (
    HoleParams,
    TargetTriple,
    construction_sizes,
    floor_parity,
    lemma_dwa_host_size,
    lemma_trzy_host_size,
    sqrt_enclosure,
    theorem_coefficient,
    xi,
)
from cycleramsey.errors import UndefinedTarget


def test_floor_parity_examples():
    assert floor_parity(Fraction(11, 2), "odd") == 5
    assert floor_parity(Fraction(11, 2), "even") == 4
    assert floor_parity(6, "even") == 6
    assert floor_parity(7, "odd") == 7
    with pytest.raises(UndefinedTarget):
        floor_parity(Fraction(5, 2), "odd")
    with pytest.raises(UndefinedTarget):
        floor_parity(1, "even")


def test_theorem_coefficient_reported_values():
    assert theorem_coefficient(TargetTriple((1, 1, 1), ("odd",) * 3, 10)) == 4
    assert (
        theorem_coefficient(TargetTriple((1, 1, 1), ("even", "even", "odd"), 10)) == 3
    )
    assert (
        theorem_coefficient(TargetTriple((1, 2, 2), ("even", "odd", "odd"), 10)) == 5
    )
    # all-even reformulation
    assert theorem_coefficient(
        TargetTriple((1, 1, 1), ("even",) * 3, 10)
    ) == 2


def _random_triple(rng, parities):
    alphas = tuple(
        Fraction(rng.randint(4, 40), rng.randint(1, 6)) for _ in range(3)
    )
    return TargetTriple(alphas, parities, 100)


def test_coefficient_symmetries():
    rng = random.Random(17)
    for _ in range(800):
        # case iv: invariant under all permutations
        t = _random_triple(rng, ("odd",) * 3)
        base = theorem_coefficient(t)
        permuted = TargetTriple(
            (t.alphas[2], t.alphas[0], t.alphas[1]), t.parities, t.n
        )
        assert theorem_coefficient(permuted) == base
        # case ii: swapping the two even entries
        t = _random_triple(rng, ("even", "even", "odd"))
        swapped = TargetTriple(
            (t.alphas[1], t.alphas[0], t.alphas[2]), t.parities, t.n
        )
        assert theorem_coefficient(swapped) == theorem_coefficient(t)
        # case iii: swapping the two odd entries
        t = _random_triple(rng, ("even", "odd", "odd"))
        swapped = TargetTriple(
            (t.alphas[0], t.alphas[2], t.alphas[1]), t.parities, t.n
        )
        assert theorem_coefficient(swapped) == theorem_coefficient(t)


def test_coefficient_dominates_each_alpha():
    rng = random.Random(18)
    parities_pool = [
        ("even",) * 3,
        ("even", "even", "odd"),
        ("even", "odd", "odd"),
        ("odd",) * 3,
    ]
    for _ in range(800):
        t = _random_triple(rng, parities_pool[rng.randrange(4)])
        assert theorem_coefficient(t) >= max(t.alphas)


def test_xi_reported_values():
    assert xi(1, 1, 0) == 2
    assert xi(1, 1, 1) == Fraction(5, 2)
    assert xi(2, 1, 0) == 4


def test_xi_lower_bound_inequality():
    rng = random.Random(19)
    half = Fraction(1, 2)
    for _ in range(800):
        a = Fraction(rng.randint(1, 40), rng.randint(1, 10))
        b = Fraction(rng.randint(1, 40), rng.randint(1, 10))
        nu = Fraction(rng.randint(0, 40), rng.randint(1, 10))
        assert xi(a, b, nu) >= half * a + half * b + max(half * a, half * b, nu)


def test_hole_params_validation():
    HoleParams(1, 1, 0, Fraction(1, 1000))
    with pytest.raises(ValueError):
        HoleParams(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 1000))
    with pytest.raises(ValueError):
        HoleParams(1, 1, 0, Fraction(1, 50))  # eps too large


def test_host_size_reported_values():
    eps = Fraction(1, 10000)
    assert lemma_dwa_host_size(HoleParams(1, 1, 0, eps), 100) == 153
    assert lemma_dwa_host_size(HoleParams(1, 1, 1, eps), 100) == 203
    assert lemma_dwa_host_size(HoleParams(1, Fraction(1, 2), 1, eps), 100) == 178


def test_host_size_never_under_reported():
    # irrational sqrt(eps): the outward enclosure may only round up
    eps = Fraction(1, 3000)
    n = 100
    hp = HoleParams(1, 1, 0, eps)
    got = lemma_dwa_host_size(hp, n)
    lo, hi = sqrt_enclosure(eps)
    assert lo < hi  # genuinely inexact
    exact_low = (Fraction(3, 2) + 3 * lo) * n
    assert got >= exact_low
    assert lemma_trzy_host_size(hp, n) >= (xi(1, 1, 0) + 5 * lo) * n


def test_sqrt_enclosure_exact_cases():
    lo, hi = sqrt_enclosure(Fraction(1, 256))
    assert lo == hi == Fraction(1, 16)
    lo, hi = sqrt_enclosure(Fraction(9, 4))
    assert lo == hi == Fraction(3, 2)


def test_construction_sizes_reported_values():
    assert construction_sizes(TargetTriple((5, 5, 5), ("odd",) * 3, 1)) == [
        ("odd_triple", 16)
    ]
    sizes = construction_sizes(TargetTriple((4, 4, 5), ("even", "even", "odd"), 1))
    assert sizes == [("eeo_four_part", 8), ("eeo_three_part", 6)]
    sizes = construction_sizes(TargetTriple((4, 5, 5), ("even", "odd", "odd"), 1))
    assert dict(sizes) == {
        "oee_four_part:2": 10,
        "oee_four_part:3": 10,
        "odd_triple": 8,
    }
    assert construction_sizes(TargetTriple((1, 1, 1), ("even",) * 3, 10)) == []


def test_construction_sizes_below_coefficient_scaled():
    # report slack of each construction against the coefficient at growing n;
    # the gap is asymptotic, so it is printed rather than asserted small
    rng = random.Random(21)
    for _ in range(30):
        m1 = rng.randrange(5, 15, 2)
        t = TargetTriple((m1, m1, m1), ("odd",) * 3, 1)
        coeff = theorem_coefficient(t)
        for name, size in construction_sizes(t):
            slack = coeff * t.n - size  # 4*m1 - (4*m1 - 4)
            assert size > 0
            assert slack == 4


def test_target_triple_validation():
    with pytest.raises(UndefinedTarget):
        TargetTriple((Fraction(1, 10), 1, 1), ("odd",) * 3, 10)  # length < 3
    with pytest.raises(UndefinedTarget):
        TargetTriple((Fraction(3, 10), 1, 1), ("even", "odd", "odd"), 10)
    with pytest.raises(ValueError):
        TargetTriple((0, 1, 1), ("odd",) * 3, 10)
    with pytest.raises(ValueError):
        TargetTriple((1, 1, 1), ("odd",) * 3, 0)


@given(
    st.fractions(min_value=3, max_value=1000),
    st.sampled_from(("odd", "even")),
)
@settings(max_examples=200, deadline=None)
def test_floor_parity_properties(x, parity):
    m = floor_parity(x, parity)
    assert m <= x
    assert m % 2 == (1 if parity == "odd" else 0)
    assert m + 2 > x  # maximality


@given(
    st.fractions(min_value=Fraction(1, 8), max_value=8),
    st.fractions(min_value=Fraction(1, 8), max_value=8),
    st.fractions(min_value=0, max_value=8),
)
@settings(max_examples=200, deadline=None)
def test_xi_monotone_in_each_argument(a, b, nu):
    bump = Fraction(1, 4)
    assert xi(a + bump, b, nu) >= xi(a, b, nu)
    assert xi(a, b + bump, nu) >= xi(a, b, nu)
    assert xi(a, b, nu + bump) >= xi(a, b, nu)
