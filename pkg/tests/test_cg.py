import random

import pytest

from wmds.chinta_gunnells import (
    casselman_shalika,
    cg_act,
    cg_simple,
    cs_for,
    cs_zero,
    h_coefficients,
    invariance_residual,
    random_localized_monomial,
    verify_braid,
    verify_cs_invariance,
    verify_involution,
)
from wmds.gauss_ring import GaussRing, GroupAlgebraElement, LocalizedElement, format_element
from wmds.rootdata import build_root_datum, metaplectic_structure
from wmds.scattering import bullet


def meta_for(t, n):
    return metaplectic_structure(build_root_datum(t), n)


def _samples(meta, count=12, seed=1):
    rng = random.Random(seed)
    return [random_localized_monomial(meta, rng) for _ in range(count)]


@pytest.mark.parametrize("t,n", [("A1", 3), ("A2", 2), ("A2", 4), ("B2", 3), ("G2", 3), ("A3", 2)])
def test_involution(t, n):
    m = meta_for(t, n)
    assert verify_involution(m, _samples(m)).passed


@pytest.mark.parametrize("t,n", [("A2", 5), ("B2", 4), ("G2", 3), ("A3", 3), ("B3", 2)])
def test_braid_relations(t, n):
    m = meta_for(t, n)
    assert verify_braid(m, _samples(m, 8)).passed


def test_action_is_linear():
    m = meta_for("A2", 3)
    x, y = _samples(m, 2, seed=5)
    for i in range(2):
        assert cg_simple(m, i, x + y).equals(cg_simple(m, i, x) + cg_simple(m, i, y))


def test_n1_is_ordinary_reflection_up_to_factor():
    # with n = 1 every g is -1 and s_i * e^lam = s_i e^lam
    m = meta_for("A2", 1)
    R = GaussRing(1)
    x = LocalizedElement.monomial(R, (2, -1))
    assert cg_simple(m, 0, x).equals(LocalizedElement.monomial(R, m.datum.reflect(0, (2, -1))))


def _weyl_character_side(m, lam):
    d, R = m.datum, GaussRing(m.n)
    alt = GroupAlgebraElement.zero(R, d.rank)
    for w in d.weyl_group:
        mu = tuple(lam)
        for i in reversed(w.word):
            mu = bullet(m, i, mu)
        alt = alt + GroupAlgebraElement.monomial(R, mu, (-1) ** w.length)
    rhs = alt * GroupAlgebraElement.monomial(R, (0,) * d.rank, R.v(sum(lam)))
    for b in d.positive_coroots:
        rhs = rhs.mul_factor(1, b)
    return rhs


@pytest.mark.parametrize("t,lam", [("A1", (0,)), ("A1", (3,)), ("A2", (0, 0)), ("A2", (1, 1)), ("A2", (2, 1)), ("B2", (1, 1)), ("G2", (0, 0)), ("C3", (0, 0, 0))])
def test_classical_casselman_shalika(t, lam):
    m = meta_for(t, 1)
    cs = casselman_shalika(m, lam)
    lhs = cs
    for b in m.datum.positive_coroots:
        lhs = lhs.mul_factor(0, b)
    assert lhs == _weyl_character_side(m, lam)


def test_cs_zero_n1_is_product():
    m = meta_for("A2", 1)
    R = GaussRing(1)
    prod = GroupAlgebraElement.one(R, 2)
    for b in m.datum.positive_coroots:
        prod = prod.mul_factor(1, b)
    assert cs_zero(m) == prod


def test_rank_one_examples():
    assert format_element(cs_for("A1", 3)) == "1 + v*g1*e[-1]"
    assert format_element(cs_for("A1", 5)) == "1 + v*g1*e[-1]"
    assert format_element(cs_for("A1", 1)) == "1 - v*e[-1]"
    assert format_element(cs_for("A1", 2)) == "1 + v*g1*e[-1]"


def test_a2_large_n_stable_shape():
    # the support stabilises once n >= 4
    for n in (4, 5, 6):
        assert cs_for("A2", n).support() == {(0, 0), (-1, 0), (0, -1), (-2, -1), (-1, -2), (-2, -2)}


@pytest.mark.parametrize("t,n", [("A1", 2), ("A1", 4), ("A2", 3), ("A2", 5), ("B2", 2), ("B2", 3), ("C2", 4), ("G2", 2), ("A3", 2)])
def test_invariance(t, n):
    assert verify_cs_invariance(meta_for(t, n)).passed


def test_invariance_detects_a_wrong_polynomial():
    m = meta_for("A2", 4)
    R = GaussRing(4)
    good = cs_zero(m)
    bad = good + GroupAlgebraElement.monomial(R, (-2, -1), R.v(3) * R.g(1) * R.g(2) - R.v(2) * R.g(1) * R.g(2))
    assert any(not invariance_residual(m, bad, i).is_zero() for i in range(2))


def test_h_coefficients_strip_v():
    h = h_coefficients(meta_for("A2", 4))
    R = GaussRing(4)
    assert h[(0, 0)] == R.one()
    assert h[(1, 0)] == R.g(1)
    assert h[(2, 1)] == R.v(-1) * R.g(1) * R.g(2)
    assert h[(3, 0)] == R.zero()


def test_non_dominant_rejected():
    with pytest.raises(ValueError):
        casselman_shalika(meta_for("A2", 2), (1, 0))


def test_word_action_composes():
    m = meta_for("B2", 2)
    x = _samples(m, 1, seed=9)[0]
    assert cg_act(m, (0, 1), x).equals(cg_simple(m, 0, cg_simple(m, 1, x)))
    assert cg_act(m, m.datum.element((0, 1)), x).equals(cg_act(m, (0, 1), x))
