import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ffvar.partitions import dual, enumerate_partitions
from ffvar.symmetric import (
    InconsistentSchurValue,
    cauchy_probability,
    character,
    character_table,
    complete_homogeneous,
    dual_sign,
    frobenius_check,
    schur_bialternant,
    schur_eval,
    schur_ones,
    schur_ones_hook_content,
    schur_ones_product,
)

from oracles import character_oracle, cycle_type


def test_character_examples():
    assert character((2, 1), (1, 1, 1)) == 2
    assert character((2, 1), (3,)) == -1
    assert character((3,), (2, 1)) == 1
    assert character((1, 1, 1), (2, 1)) == -1
    with pytest.raises(ValueError):
        character((2, 1), (2,))


def test_s4_table():
    # standard table of S_4, classes (4),(3,1),(2,2),(2,1,1),(1^4)
    parts, table = character_table(4)
    expected = {
        (4,): (1, 1, 1, 1, 1),
        (3, 1): (-1, 0, -1, 1, 3),
        (2, 2): (0, -1, 2, 0, 2),
        (2, 1, 1): (1, 0, -1, -1, 3),
        (1, 1, 1, 1): (-1, 1, 1, -1, 1),
    }
    for lam, row in zip(parts, table):
        assert row == expected[lam]


@pytest.mark.parametrize("n", range(1, 6))
def test_murnaghan_nakayama_vs_permutation_oracle(n):
    perms = list(itertools.permutations(range(n)))
    for lam in enumerate_partitions(n):
        vals = []
        for perm in perms:
            v = character_oracle(lam, perm)
            assert v == character(lam, cycle_type(perm))
            vals.append(v)
        # irreducibility by explicit averaging over S_n
        assert Fraction(sum(v * v for v in vals), math.factorial(n)) == 1


@pytest.mark.parametrize("n", range(1, 9))
def test_orthogonality(n):
    parts = enumerate_partitions(n)
    for a in parts:
        for b in parts:
            ip = sum(cauchy_probability(nu) * character(a, nu) * character(b, nu) for nu in parts)
            assert ip == (a == b)


@pytest.mark.parametrize("n", range(1, 9))
def test_dual_partition_identity(n):
    for lam in enumerate_partitions(n):
        for tau in enumerate_partitions(n):
            assert character(dual(lam), tau) == dual_sign(tau) * character(lam, tau)


def test_cauchy_examples():
    assert cauchy_probability((2,)) == Fraction(1, 2)
    assert cauchy_probability((1, 1)) == Fraction(1, 2)
    assert cauchy_probability((2, 2)) == Fraction(1, 8)
    for n in range(1, 9):
        assert sum(cauchy_probability(l) for l in enumerate_partitions(n)) == 1


def test_schur_ones_examples():
    assert schur_ones((2,), 2) == 3
    assert schur_ones((1, 1), 2) == 1
    assert schur_ones((2, 1), 3) == 8
    assert schur_ones((1, 1, 1), 2) == 0


@pytest.mark.parametrize("n", range(1, 11))
def test_schur_ones_three_way(n):
    for lam in enumerate_partitions(n):
        for k in range(1, 6):
            schur_ones(lam, k)


def test_inconsistent_value_is_reported(monkeypatch):
    import ffvar.symmetric as sym
    sym.schur_ones.cache_clear()
    monkeypatch.setattr(sym, "schur_ones_hook_content", lambda lam, k: Fraction(-1))
    with pytest.raises(InconsistentSchurValue):
        sym.schur_ones((2, 1), 3)
    sym.schur_ones.cache_clear()


def test_content_sign_matters():
    from ffvar.partitions import hook_lengths
    hooks = hook_lengths((1, 1))
    flipped = math.prod(Fraction(2 + (i - j), hk) for (i, j), hk in hooks.items())
    assert flipped == 3
    assert schur_ones_hook_content((1, 1), 2) == 1
    assert schur_ones_product((1, 1), 2) == 1


def test_schur_at_repeated_points_and_bialternant():
    pts = [Fraction(1, 2), Fraction(1, 3), Fraction(2, 5)]
    for lam in enumerate_partitions(4):
        exact = schur_eval(lam, pts)
        approx = schur_bialternant(lam, [float(x) for x in pts])
        assert abs(float(exact) - approx.real) < 1e-12
    assert schur_eval((2, 1), [1, 1, 1]) == 8
    assert schur_eval((1, 1, 1, 1), [1, 2, 3]) == 0


def test_complete_homogeneous():
    h = complete_homogeneous([Fraction(1), Fraction(1)], 3)
    assert h == [1, 2, 3, 4]


def test_frobenius_random_points():
    rng = np.random.default_rng(7)
    pts = rng.uniform(-1, 1, 10) + 1j * rng.uniform(-1, 1, 10)
    worst = max(frobenius_check(lam, list(pts)) for n in range(1, 9) for lam in enumerate_partitions(n))
    assert worst < 1e-9


def test_frobenius_needs_points():
    with pytest.raises(ValueError):
        frobenius_check((1,), [])


@given(st.integers(1, 7).flatmap(lambda n: st.sampled_from(enumerate_partitions(n))),
       st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5), min_size=1, max_size=4))
def test_jacobi_trudi_vs_frobenius_exact(lam, pts):
    """s_lam = sum_nu p(nu) X^lam(nu) p_nu, exactly over the rationals."""
    n = sum(lam)
    rhs = sum(cauchy_probability(nu) * character(lam, nu) * math.prod(sum(x**p for x in pts) for p in nu)
              for nu in enumerate_partitions(n))
    assert schur_eval(lam, pts) == rhs


def test_power_sum_examples():
    from ffvar.symmetric import power_sum_eval
    assert power_sum_eval((1,), [3]) == 3
    assert power_sum_eval((2, 1), [1, 1]) == 4


def test_trivial_character_and_small_examples():
    for n in range(1, 9):
        for tau in enumerate_partitions(n):
            assert character((n,), tau) == 1
    assert character((1, 1, 1), (3,)) == 1
    assert cauchy_probability((5,)) == Fraction(1, 5)
    assert cauchy_probability((1,) * 5) == Fraction(1, 120)
    assert schur_eval((2, 1), [1, 1]) == 2
    assert schur_ones((4,), 3) == math.comb(6, 4)


@pytest.mark.parametrize("n", range(1, 8))
def test_cauchy_identity_at_integer_points(n):
    for tau in enumerate_partitions(n):
        for k in range(1, 5):
            rhs = sum(schur_ones(lam, k) * character(lam, tau) for lam in enumerate_partitions(n))
            assert rhs == k ** len(tau)
