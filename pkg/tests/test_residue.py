import cmath
import math
import random
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Poly, symbols

from wmds.residue import (
    FieldConstraintWarning,
    FqPoly,
    Place,
    check_field,
    factor,
    gauss_sum,
    gauss_sum_G,
    hilbert_S,
    hilbert_symbol,
    irreducibles,
    monic_polys,
    parse_poly,
    power_residue_symbol,
    reciprocity_product,
    residue_symbol_S,
)
from wmds.suites import gauss_suite, symbol_suite

Q = 7


def polys(q=Q, max_deg=5, nonzero=False):
    return st.lists(st.integers(0, q - 1), min_size=1, max_size=max_deg + 1).map(lambda c: FqPoly(q, c)).filter(
        lambda p: bool(p) or not nonzero
    )


@given(polys(), polys(nonzero=True))
def test_divmod_identity(a, b):
    quo, rem = divmod(a, b)
    assert quo * b + rem == a
    assert rem.degree < b.degree


@settings(max_examples=60, deadline=None)
@given(polys(max_deg=6, nonzero=True))
def test_factor_roundtrip(f):
    lc, parts = factor(f)
    prod = FqPoly(Q, [lc])
    for p, e in parts:
        assert p.is_monic()
        assert Poly(list(reversed(p.coeffs)), symbols("t"), modulus=Q).is_irreducible
        prod = prod * p ** e
    assert prod == f


@pytest.mark.parametrize("q,d,count", [(7, 1, 7), (7, 2, 21), (7, 3, 112), (3, 4, 18), (5, 2, 10)])
def test_irreducible_counts(q, d, count):
    assert len(irreducibles(q, d)) == count


def test_parse_and_print():
    p = parse_poly("t^2+3*t+1", 7)
    assert p == FqPoly(7, [1, 3, 1])
    assert str(p) == "t^2+3*t+1"
    assert parse_poly("t", 7) == FqPoly.t(7)
    assert len(monic_polys(7, 2)) == 49


def test_field_checks():
    with pytest.raises(ValueError):
        check_field(9, 2)
    with pytest.raises(ValueError):
        check_field(7, 4)
    with pytest.warns(FieldConstraintWarning):
        check_field(7, 2)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        check_field(13, 3)


@pytest.mark.parametrize("q,n,d", [(7, 3, 1), (7, 3, 2), (13, 3, 1), (13, 4, 1), (13, 6, 1)])
def test_gauss_sum_absolute_value(q, n, d):
    for k in range(1, n):
        assert abs(abs(gauss_sum(k, d, n, q)) - math.sqrt(q ** d)) < 1e-9


def test_gauss_sum_sign_when_2n_does_not_divide():
    with pytest.warns(FieldConstraintWarning):
        check_field(7, 2)
    assert abs(gauss_sum(1, 1, 2, 7) ** 2 + 7) < 1e-9


@pytest.mark.parametrize("q,n", [(7, 3), (13, 3), (17, 4)])
def test_gauss_suite(q, n):
    assert gauss_suite(q, n).passed


def test_G_values():
    q, n = 7, 3
    assert abs(gauss_sum_G(0, 0, q, n) - (q - 1)) < 1e-9
    assert abs(gauss_sum_G(1, 0, q, n)) < 1e-9
    for b in (1, 2):
        assert abs(gauss_sum_G(1, b, q, n)) < 1e-9
    assert abs(gauss_sum_G(1, -2, q, n)) < 1e-9
    assert abs(gauss_sum_G(1, -1, q, n) - gauss_sum(1, 1, n, q)) < 1e-9
    assert abs(gauss_sum_G(0, -1, q, n) + 1) < 1e-9


def test_symbol_suite():
    rep = symbol_suite(7, 3, count=40, seed=3)
    assert rep.passed, rep.failures[:3]
    assert symbol_suite(17, 4, count=20, seed=1).passed


def test_power_residue_multiplicative():
    rng = random.Random(0)
    P = parse_poly("t^2+1", 7)
    for _ in range(30):
        a = FqPoly(7, [rng.randrange(1, 7), rng.randrange(7), 1])
        b = FqPoly(7, [rng.randrange(1, 7), 1])
        if a % P and b % P:
            lhs = power_residue_symbol(a * b, P, 3)
            assert lhs == (power_residue_symbol(a, P, 3) + power_residue_symbol(b, P, 3)) % 3


def test_symbol_at_infinity_and_reciprocity():
    t = FqPoly.t(7)
    inf = Place.infinity(7)
    assert hilbert_symbol(t, t, inf, 3) == 0
    assert hilbert_S(t, t, 3) == 0
    a, b = parse_poly("t^3+2", 7), parse_poly("t^2+t+3", 7)
    assert reciprocity_product(a, b, 3) == 0
    # rational arguments
    assert reciprocity_product((a, b), (b * b, t), 3) == 0


def test_residue_symbol_S_coprimality():
    t = FqPoly.t(7)
    assert residue_symbol_S(t, t * parse_poly("t+1", 7), 3) is None
    assert residue_symbol_S(parse_poly("t+1", 7), t, 3) is not None


def test_unit_symbols_are_trivial():
    P = Place(7, parse_poly("t+3", 7))
    assert hilbert_symbol(parse_poly("t^2+1", 7), parse_poly("t+5", 7), P, 3) == 0


def test_epsilon_matches_exponential():
    from wmds.residue import epsilon

    assert cmath.isclose(epsilon(1, 3), cmath.exp(2j * cmath.pi / 3))
    assert epsilon(3, 3) == 1
