from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wmds.gauss_ring import (
    GaussRing,
    GroupAlgebraElement,
    LocalizedElement,
    NotDivisible,
    coset_restrict,
    exact_divide,
    format_element,
    from_records,
    specialize,
)
from wmds.residue import gauss_table_degree
from wmds.rootdata import build_root_datum, metaplectic_structure

RANK = 2


def scalars(ring):
    mono = st.tuples(st.integers(-2, 2), st.integers(0, ring.n - 1), st.integers(-3, 3))
    return st.lists(mono, min_size=0, max_size=3).map(
        lambda ts: sum((ring.v(a) * ring.g(k) * c for a, k, c in ts), ring.zero())
    )


def elements(ring):
    term = st.tuples(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), scalars(ring))
    return st.lists(term, max_size=4).map(
        lambda ts: sum((GroupAlgebraElement.monomial(ring, lam, s) for lam, s in ts), GroupAlgebraElement.zero(ring, RANK))
    )


R3 = GaussRing(3)
R4 = GaussRing(4)


@pytest.mark.parametrize("ring", [R3, R4], ids=["n3", "n4"])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_ring_axioms(ring, data):
    a, b, c = (data.draw(elements(ring)) for _ in range(3))
    zero, one = GroupAlgebraElement.zero(ring, RANK), GroupAlgebraElement.one(ring, RANK)
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + zero == a and a * one == a
    assert (a - a).is_zero()


def test_generator_relations():
    assert R3.g(0) == R3.const(-1)
    assert R3.g(1) * R3.g(2) == R3.v(-1)
    assert R3.g(4) == R3.g(1)
    assert R4.g(2) * R4.g(2) == R4.v(-1)
    assert str(R4.g(1) * R4.g(1) * R4.g(2)) == "g1^2*g2"


def _convolve(x, y):
    out = {}
    for a, va in x.items():
        for b, vb in y.items():
            k = tuple(i + j for i, j in zip(a, b))
            out[k] = out.get(k, 0) + va * vb
    return out


def _close(x, y):
    keys = set(x) | set(y)
    return all(abs(x.get(k, 0) - y.get(k, 0)) < 1e-8 * (1 + abs(x.get(k, 0))) for k in keys)


# 2n | q - 1 so that g_k g_{-k} = q_nu holds numerically
@pytest.mark.parametrize("ring,q,d", [(R3, 7, 1), (R3, 13, 1), (R3, 7, 2), (R4, 17, 1), (GaussRing(2), 5, 1)])
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_specialize_is_a_homomorphism(ring, q, d, data):
    a, b = data.draw(elements(ring)), data.draw(elements(ring))
    gv = dict(enumerate(gauss_table_degree(q, ring.n, d)))
    qn = q ** d
    assert _close(specialize(a * b, qn, gv), _convolve(specialize(a, qn, gv), specialize(b, qn, gv)))
    s, t = data.draw(scalars(ring)), data.draw(scalars(ring))
    assert abs(specialize(s * t, qn, gv) - specialize(s, qn, gv) * specialize(t, qn, gv)) < 1e-8 * (1 + abs(specialize(s * t, qn, gv)))


@settings(max_examples=40, deadline=None)
@given(data=st.data(), delta=st.integers(0, 1), mu=st.sampled_from([(1, 0), (0, 1), (1, 1), (3, 0), (2, 2), (-1, 0)]))
def test_exact_divide_roundtrip(data, delta, mu):
    p = data.draw(elements(R3))
    assert exact_divide(p.mul_factor(delta, mu), delta, mu) == p


def test_exact_divide_rejects_remainder():
    one = GroupAlgebraElement.one(R3, RANK)
    with pytest.raises(NotDivisible):
        exact_divide(one, 1, (1, 0))


def test_localized_arithmetic():
    x = LocalizedElement.monomial(R3, (0, 0)).div_factor(0, (1, 0))
    y = LocalizedElement.monomial(R3, (0, 0)).div_factor(0, (-1, 0))
    # 1/(1-e^{-a}) + 1/(1-e^{a}) = 1
    assert (x + y).clear_denominators() == GroupAlgebraElement.one(R3, RANK)
    assert (x * y).mul_factor(0, (1, 0)).mul_factor(0, (-1, 0)).equals(GroupAlgebraElement.one(R3, RANK))
    assert not x.is_polynomial()


def test_records_roundtrip_and_format():
    x = GroupAlgebraElement.monomial(R3, (0, 0)) + GroupAlgebraElement.monomial(R3, (-1, 0), R3.v() * R3.g(1) * Fraction(1, 2))
    from wmds.gauss_ring import to_records

    assert from_records(R3, RANK, to_records(x)) == x
    assert format_element(x) == "1 + 1/2*v*g1*e[-1,0]"


def test_coset_restrict():
    m = metaplectic_structure(build_root_datum("A2"), 2)
    x = sum((GroupAlgebraElement.monomial(R3, lam) for lam in [(0, 0), (-1, 0), (-2, 0), (-2, -2)]), GroupAlgebraElement.zero(R3, 2))
    kept = coset_restrict(x, (0, 0), m.in_lambda0)
    assert kept.support() == {(0, 0), (-2, 0), (-2, -2)}
    assert coset_restrict(x, (1, 0), m.in_lambda0).support() == {(-1, 0)}
