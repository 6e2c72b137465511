import itertools
import json
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ffvar import config
from ffvar.arith import (
    CLOSED_FORM_NAMES,
    FourierExpansion,
    closed_form_expansion,
    convolve,
    fourier_coefficients,
    frac_str,
    harmonic,
    iota,
    named,
    parse_function,
    truncated_mobius_sum,
    values_on_monics,
)
from ffvar.ffpoly import Poly, enumerate_monics, factor, is_squarefree, poly_gcd
from ffvar.harness import empirical_mean
from ffvar.partitions import enumerate_partitions
from ffvar.symmetric import character

NAMED = [("const1",), ("mu",), ("mu_squared",), ("lambda",), ("omega",), ("mu_omega",),
         ("lambda_j", 2), ("lambda_j", 3), ("d_k", 2), ("d_k", 3), ("mu_trunc", 1)]


def types_of_weight(w):
    """Every extended factorization type of total degree w (as multisets of (m, e))."""
    out = set()
    for lam in enumerate_partitions(w) if w else [()]:
        # split each part m*e ... enumerate all (m, e) with m*e = part
        opts = [[(m, p // m) for m in range(1, p + 1) if p % m == 0] for p in lam]
        for choice in itertools.product(*opts):
            out.add(tuple(sorted(choice, reverse=True)))
    return sorted(out)


def test_named_examples():
    assert named("lambda").on_poly(Poly([0, 0, 0, 1], 2)) == 1
    assert named("d_k", 2).on_poly(Poly([0, 0, 1], 3)) == 3
    assert named("mu").on_poly(Poly([0, 0, 1], 2)) == 0
    assert named("mu").on_poly(Poly([0, 1, 1], 2)) == 1
    assert named("omega").on_poly(Poly([0, 1, 1], 2)) == 2


def test_named_errors():
    with pytest.raises(ValueError):
        named("zeta")
    with pytest.raises(ValueError):
        named("d_k", 0)
    with pytest.raises(ValueError):
        named("d_k")
    with pytest.raises(ValueError):
        named("lambda_j", -1)
    with pytest.raises(ValueError):
        named("iota", 1)
    assert parse_function("d_k:3").name == "d_k:3"
    assert parse_function("mu").name == "mu"


def test_convolution_examples():
    i11 = iota([(1, 1)])
    assert convolve(i11, i11)(((1, 1), (1, 1))) == 2
    d2 = named("d_k", 2)
    one = named("const1")
    for w in range(6):
        for t in types_of_weight(w):
            assert convolve(one, one)(t) == d2(t)
            assert convolve(convolve(one, one), one)(t) == named("d_k", 3)(t)


@pytest.mark.parametrize("pairs", [[(1, 1), (2, 1), (1, 2)], [(1, 1), (1, 1), (2, 1)], [(3, 1)]])
def test_iota_iterated_convolution(pairs):
    # on types with len(pairs) distinct primes the convolution is the indicator,
    # counted once per ordering of equal pairs; elsewhere it only sees fewer primes
    f = iota(pairs)
    mult = math.prod(math.factorial(pairs.count(p)) for p in set(pairs))
    weight = sum(m * e for m, e in pairs)
    for w in range(7):
        for t in types_of_weight(w):
            v = f(t)
            if len(t) >= len(pairs):
                assert v == (mult if sorted(t) == sorted(pairs) else 0)
            elif v:
                assert w == weight


def test_von_mangoldt_and_divisor_identities():
    lam, mu, d2 = named("lambda"), named("mu"), named("d_k", 2)
    for w in range(1, 7):
        for t in types_of_weight(w):
            # sum of Lambda over divisors is the degree; mu * 1 is the unit
            assert convolve(lam, named("const1"))(t) == w
            assert convolve(mu, named("const1"))(t) == 0
            assert d2(t) == sum(1 for _ in _divisors(t))


def _divisors(t):
    yield from itertools.product(*[range(e + 1) for _, e in t])


def test_expansion_examples():
    for n in range(1, 7):
        assert fourier_coefficients(named("mu"), n).coeffs == {(1,) * n: (-1) ** n}
    assert fourier_coefficients(named("lambda"), 3).coeffs == {(3,): 1, (2, 1): -1, (1, 1, 1): 1}
    assert fourier_coefficients(named("omega"), 2).coeffs == {(2,): Fraction(3, 2), (1, 1): Fraction(1, 2)}
    assert closed_form_expansion("d_k", 2, 2).coeffs == {(2,): 3, (1, 1): 1}
    for j in (1, 2, 3):
        assert closed_form_expansion("lambda_j", 2, j).coeffs == {(2,): 2**j - 1, (1, 1): -1}
    for n in range(1, 8):
        c = closed_form_expansion("mu_omega", n).coefficient((1,) * n)
        assert c == (-1) ** n * harmonic(n)
    assert harmonic(2) == Fraction(3, 2)
    with pytest.raises(ValueError):
        closed_form_expansion("const1", 3)


def _cases(n):
    cases = [("mu",), ("mu_squared",), ("lambda",), ("omega",), ("mu_omega",)]
    cases += [("lambda_j", j) for j in (1, 2, 3, 4)] + [("d_k", k) for k in (1, 2, 3, 4, 5)]
    cases += [("mu_trunc", s) for s in range(n + 1)]
    return cases


@pytest.mark.parametrize("n", range(1, 9))
def test_closed_forms_equal_general_algorithm(n):
    for case in _cases(n):
        general = fourier_coefficients(named(*case), n)
        closed = closed_form_expansion(case[0], n, *case[1:])
        assert general.coeffs == closed.coeffs, case
    assert {c[0] for c in _cases(n)} == set(CLOSED_FORM_NAMES)


@pytest.mark.parametrize("n", range(1, 7))
def test_reconstruction(n):
    for case in NAMED:
        a = named(*case)
        exp = fourier_coefficients(a, n)
        for lam in enumerate_partitions(n):
            assert sum(c * character(mu, lam) for mu, c in exp.coeffs.items()) == a.on_partition(lam)


def test_omega_expansion_reproduces_number_of_parts():
    for n in range(1, 9):
        exp = closed_form_expansion("omega", n)
        for tau in enumerate_partitions(n):
            assert exp.value_on_partition(tau) == len(tau)


def test_squareful_remainder_vanishes_on_squarefree():
    exp = fourier_coefficients(named("lambda"), 4)
    b = exp.squareful_remainder
    for t in types_of_weight(4):
        if all(e == 1 for _, e in t):
            assert b(t) == 0
    assert b(((1, 4),)) == 1 - exp.value_on_partition((1, 1, 1, 1)) or b(((1, 4),)) == 1


def test_truncated_mobius():
    q = 3
    assert truncated_mobius_sum(Poly([0, 1, 1], q), 0) == 1
    for f in enumerate_monics(q, 4):
        if not is_squarefree(f):
            continue
        t = factor(f)[0]
        lam = tuple(sorted((m for m, _ in t), reverse=True))
        assert truncated_mobius_sum(f, 4) == 0
        for s in range(4):
            assert truncated_mobius_sum(f, s) == (-1) ** s * character((4 - s,) + (1,) * s, lam)
    with pytest.raises(ValueError):
        truncated_mobius_sum(Poly([0, 1], q), 2)


def test_d_k_multiplicative():
    rng = random.Random(3)
    monics = {d: list(enumerate_monics(3, d)) for d in range(1, 4)}
    d3 = named("d_k", 3)
    checked = 0
    while checked < 60:
        f = rng.choice(monics[rng.randint(1, 3)])
        g = rng.choice(monics[rng.randint(1, 3)])
        if poly_gcd(f, g).degree != 0:
            continue
        assert d3.on_poly(f * g) == d3.on_poly(f) * d3.on_poly(g)
        checked += 1


@pytest.mark.parametrize("case", [("mu",), ("lambda",), ("d_k", 2), ("omega",), ("mu_omega",)])
def test_mean_value_approaches_trivial_coefficient(case):
    a = named(*case)
    target = fourier_coefficients(a, 4).coefficient((4,))
    errs = []
    for q in (5, 7, 11):
        err = abs(float(empirical_mean(a, q, 4) - target))
        assert err <= config.C_MEAN / q
        errs.append(err)


def test_values_on_monics_scaling():
    v, den = values_on_monics(named("omega").scaled(Fraction(1, 3)), 3, 2)
    assert den == 3
    assert [Fraction(int(x), den) for x in v] == [named("omega").on_poly(f) / 3 for f in enumerate_monics(3, 2)]


def test_function_algebra():
    mu, lam = named("mu"), named("lambda")
    t = ((1, 1), (1, 1))
    assert (mu + lam)(t) == 1
    assert (mu - lam)(t) == 1
    assert (mu * mu)(t) == 1
    assert lam.scaled(Fraction(1, 2))(((2, 1),)) == 1


def test_json_round_trip():
    exp = closed_form_expansion("omega", 4)
    doc = json.loads(json.dumps(exp.to_json()))
    assert FourierExpansion.from_json(doc).coeffs == exp.coeffs
    assert [e["lambda"] for e in doc["coeffs"]] == [list(l) for l in enumerate_partitions(4)]
    assert frac_str(Fraction(6, 3)) == "2"
    assert frac_str(Fraction(-3, 4)) == "-3/4"


@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=3, max_size=3),
       st.integers(2, 5))
def test_expansion_is_linear(cs, n):
    fns = [named("mu"), named("lambda"), named("omega")]
    combo = fns[0].scaled(cs[0]) + fns[1].scaled(cs[1]) + fns[2].scaled(cs[2])
    want = {}
    for c, f in zip(cs, fns):
        for lam, v in fourier_coefficients(f, n).coeffs.items():
            want[lam] = want.get(lam, 0) + c * v
    got = fourier_coefficients(combo, n).coeffs
    for lam in enumerate_partitions(n):
        assert got.get(lam, 0) == want.get(lam, 0)
