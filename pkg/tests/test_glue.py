import pytest

from wmds.glue import WMDS, AdjointTypeWarning, LambdaClassVector, TupleC, random_local_function
from wmds.residue import FqPoly, Place, gauss_sum, parse_poly

pytestmark = pytest.mark.filterwarnings("ignore::wmds.residue.FieldConstraintWarning")


@pytest.fixture(scope="module")
def a1():
    return WMDS.from_type("A1", 3, 7)


@pytest.fixture(scope="module")
def a2():
    return WMDS.from_type("A2", 2, 7)


def test_tuple_parsing(a2):
    C = TupleC.parse("t^2,t+1", 7)
    assert C.degrees == (2, 1)
    t, t1 = Place(7, FqPoly.t(7)), Place(7, parse_poly("t+1", 7))
    assert C.factorization == {t: (2, 0), t1: (0, 1)}
    assert C.local_part(t) == (parse_poly("t^2", 7), FqPoly(7, [1]))
    with pytest.raises(ValueError):
        TupleC.parse("2*t", 7)


def test_class_parsing(a2):
    cls = LambdaClassVector.parse(a2.meta, "t:-1,0;t+1:2,2", 7)
    assert str(cls) == "t:1,0"
    assert LambdaClassVector.parse(a2.meta, "0", 7) == LambdaClassVector(())
    with pytest.raises(ValueError):
        LambdaClassVector.parse(a2.meta, "t^2:1,0", 7)


def test_local_coefficients(a1):
    t = Place(7, FqPoly.t(7))
    assert a1.local_H(t, (0,)) == 1
    assert abs(a1.local_H(t, (1,)) - gauss_sum(1, 1, 3, 7)) < 1e-12
    assert a1.local_H(t, (2,)) == 0


def test_glue_support(a1):
    assert a1.glue_H(TupleC.parse("t^2", 7)).value == 0
    assert a1.in_supp_Z(TupleC.parse("t^2+1", 7))
    assert not a1.in_supp_Z(TupleC.parse("t^2", 7))


def test_series_degree_one(a1):
    z = a1.z_truncated(1)
    assert abs(z[(0,)] - 1) < 1e-12
    assert abs(z[(1,)] - 7 * gauss_sum(1, 1, 3, 7)) < 1e-9


@pytest.mark.parametrize("name", ["a1", "a2"])
def test_gluing_and_fibers(name, request):
    w = request.getfixturevalue(name)
    assert w.verify_gluing(2 if name == "a1" else 1).passed
    assert w.verify_fiber_constancy(2).passed
    assert w.regrouping(2).passed


@pytest.mark.parametrize("name", ["a1", "a2"])
def test_twisted_multiplicativity(name, request):
    w = request.getfixturevalue(name)
    pairs = w.random_coprime_pairs(25, seed=4)
    assert w.verify_twisted_multiplicativity(pairs).passed
    assert w.verify_factorizable(1, pairs, seed=4).passed


def test_twisted_multiplicativity_needs_the_root_of_unity():
    w = WMDS.from_type("A1", 3, 7)
    pairs = w.random_coprime_pairs(40, seed=2)
    plain = lambda C, Cp: abs(w.glue_H(C * Cp).value - w.glue_H(C).value * w.glue_H(Cp).value) < 1e-6  # noqa: E731
    assert not all(plain(C, Cp) for C, Cp in pairs)


def test_random_local_function_is_genuine():
    f = random_local_function(3)
    t = Place(7, FqPoly.t(7))
    assert f(t, (0, 0)) == 1
    assert f(t, (1, 0)) == f(t, (1, 0))


@pytest.mark.parametrize("cls", ["0", "t:-1"])
def test_subsum_a1(a1, cls):
    c = LambdaClassVector.parse(a1.meta, cls, 7)
    assert a1.verify_subsum_identity(c, 2).passed
    assert not a1.verify_subsum_identity(c, 2, d_twist=1).passed


@pytest.mark.parametrize("cls", ["0", "t:-1,0", "t:0,1;t+1:1,0"])
def test_subsum_a2(a2, cls):
    c = LambdaClassVector.parse(a2.meta, cls, 7)
    rep = a2.verify_subsum_identity(c, 2)
    assert rep.passed, rep.failures
    if rep.details["fiber_size"]:
        assert not a2.verify_subsum_identity(c, 2, d_twist=1).passed


def test_non_adjoint_datum():
    w = WMDS.from_type("A2", 3, 7)
    assert not w.meta.is_dual_adjoint
    # D(C) is not a function of the class here
    assert not w.verify_fiber_constancy(2).passed
    with pytest.warns(AdjointTypeWarning):
        w.verify_subsum_identity(LambdaClassVector(()), 1)
    assert w.verify_gluing(1).passed


def test_rejects_bad_field():
    with pytest.raises(ValueError):
        WMDS.from_type("A1", 4, 7)
