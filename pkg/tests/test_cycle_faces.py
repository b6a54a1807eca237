import pytest
import sympy

from mixed_tate import cycle_faces as cf
from mixed_tate.algebra import differential, rho, unit


def test_alternation_sign_on_points():
    assert cf.alt_equal(cf.point(2, 3), cf.point(3, 2) * -1)
    assert cf.point(2, 2).is_zero()


def test_inverse_coordinate_flip():
    # (u^{-1}) = -(u) under the inversion x -> 1/x of the cube
    assert cf.alt_equal(cf.point("1/2"), cf.point(2) * -1)
    assert cf.point(-1).is_zero()


def test_rho1_is_the_point_one_minus_a():
    assert cf.alt_equal(cf.rho_cycle(1, "a"), cf.point("1 - a"))


def test_rho2_boundary_by_hand():
    C = cf.rho_cycle(2, "a")
    # rho_2 = -(x, 1-x, 1-a/x): the only surviving face is x = a on coordinate 3
    expected = cf.point("a", "1 - a") * -1
    assert cf.alt_equal(cf.boundary(C), expected)


@pytest.mark.parametrize("k", range(2, 5))
def test_boundary_of_rho(k):
    lhs = cf.boundary(cf.rho_cycle(k, "a"))
    rhs = cf.realize(-(unit("a") * rho(k - 1, "a")))
    assert cf.alt_equal(lhs, rhs)


@pytest.mark.parametrize("k", range(1, 5))
def test_boundary_squared(k):
    assert cf.boundary(cf.boundary(cf.rho_cycle(k, "a"))).is_zero()


@pytest.mark.parametrize("k", range(1, 4))
def test_rho_cycles_are_proper(k):
    assert cf.is_proper(cf.rho_cycle(k, "a"))


@pytest.mark.parametrize("z", [
    rho(2, "a") * rho(2, "b"),
    unit("b") * rho(3, "a"),
    rho(2, "a") * unit("c"),
    unit("a") * unit("b"),
])
def test_realize_intertwines_differentials(z):
    assert cf.alt_equal(cf.boundary(cf.realize(z)), cf.realize(differential(z)))


def test_face_outside_range():
    with pytest.raises(ValueError):
        cf.face(cf.rho_cycle(2, "a"), 4, 0)
    with pytest.raises(ValueError):
        cf.face(cf.rho_cycle(2, "a"), 1, 1)


def test_face_of_point_is_empty():
    # a constant coordinate never meets 0 or oo
    assert cf.face(cf.point("a", "b"), 1, 0).is_zero()


def test_unresolved_face_is_reported():
    x = cf.Mono(sympy.Integer(1), ((0, 1),))
    # (x, 2x): setting x = 0 leaves a constant 0 coordinate
    C = cf.AltCycle([cf.ParamCycle(1, (x, cf.Mono(sympy.Integer(2), ((0, 1),))), (0,))], 2)
    with pytest.raises(cf.UnresolvedFace):
        cf.face(C, 1, 0)
    assert not cf.is_proper(C)
