import pytest
from hypothesis import given
from hypothesis import strategies as st

from wmds.rootdata import (
    RootDatumError,
    build_root_datum,
    hnf,
    inversion_coroots,
    metaplectic_structure,
    parse_cartan_type,
    reduce_mod_lattice,
)

ORDERS = {"A1": 2, "A2": 6, "A3": 24, "B2": 8, "C3": 48, "G2": 12, "D4": 192, "F4": 1152, "E6": 51840}
POS = {"A1": 1, "A2": 3, "A3": 6, "B2": 4, "C3": 9, "G2": 6, "D4": 12, "F4": 24, "E6": 36}


@pytest.mark.parametrize("t", sorted(ORDERS))
def test_weyl_group_order(t):
    d = build_root_datum(t)
    assert len(d.weyl_group) == ORDERS[t]
    assert len(d.positive_coroots) == POS[t]


@pytest.mark.parametrize("t", ["A2", "B2", "G2", "A3", "C3"])
def test_longest_element_inverts_everything(t):
    d = build_root_datum(t)
    w0 = d.longest_element
    assert w0.length == len(d.positive_coroots)
    assert sorted(inversion_coroots(d, w0)) == sorted(d.positive_coroots)


def test_inversion_set_rank_two():
    d = build_root_datum("A2")
    assert sorted(inversion_coroots(d, d.element((0, 1)))) == [(1, 0), (1, 1)]


def test_parse_errors():
    with pytest.raises(RootDatumError):
        build_root_datum("Z9")
    with pytest.raises(RootDatumError):
        parse_cartan_type("A2", rank=3)
    assert parse_cartan_type("b", rank=3) == ("B", 3)


@pytest.mark.parametrize("t", ["A2", "B2", "G2", "C3"])
@given(st.lists(st.integers(-6, 6), min_size=3, max_size=3), st.integers(0, 2))
def test_reflection_is_involution(t, vec, i):
    d = build_root_datum(t)
    vec = tuple(vec[: d.rank])
    i %= d.rank
    assert d.reflect(i, d.reflect(i, vec)) == vec
    assert d.pair_simple(i, d.reflect(i, vec)) == -d.pair_simple(i, vec)


def test_lambda0_examples():
    A2 = build_root_datum("A2")
    m3 = metaplectic_structure(A2, 3)
    assert m3.lambda0_basis == ((1, 2), (0, 3))
    assert not m3.is_dual_adjoint
    m2 = metaplectic_structure(A2, 2)
    assert m2.lambda0_basis == ((2, 0), (0, 2))
    assert m2.is_dual_adjoint
    m1 = metaplectic_structure(build_root_datum("A1"), 3)
    assert m1.lambda0_basis == ((3,),) and m1.is_dual_adjoint
    assert metaplectic_structure(build_root_datum("A1"), 1).lambda0_basis == ((1,),)


def test_q_normalised_on_short_coroots():
    for t in ["B2", "C3", "G2", "F4"]:
        m = metaplectic_structure(build_root_datum(t), 1)
        assert min(m.Q(b) for b in m.datum.positive_coroots) == 1


def test_dual_type_b2():
    m = metaplectic_structure(build_root_datum("B2"), 2)
    assert m.dual_datum.cartan_type == "C2"
    assert metaplectic_structure(build_root_datum("B2"), 3).dual_datum.cartan_type == "B2"


@given(st.lists(st.integers(-20, 20), min_size=2, max_size=2))
def test_reduce_is_canonical(vec):
    m = metaplectic_structure(build_root_datum("A2"), 3)
    r = m.reduce(vec)
    assert m.in_lambda0(tuple(a - b for a, b in zip(vec, r)))
    assert m.reduce(r) == r
    shifted = tuple(a + 3 * b for a, b in zip(vec, (1, -2)))
    assert m.reduce(shifted) == r


def test_hnf_and_reduction():
    assert hnf([(2, 4), (0, 3)]) == [(2, 1), (0, 3)] or hnf([(2, 4), (0, 3)]) == [(2, 4), (0, 3)]
    assert reduce_mod_lattice((5,), [(3,)]) == (2,)
