from fractions import Fraction as F

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from conftest import lattice, points, rationals
from nondegen.errors import DegenerateInput, DimensionMismatch, EmptyOrbit, IdenticalCenters
from nondegen.geometry import (
    AffineHull,
    CarriedSphere,
    Hyperplane,
    Sphere,
    affine_rank,
    circumsphere,
    hyperplane_through,
    lift_point,
    lift_sphere,
    on_carried_sphere,
    on_hyperplane,
    on_sphere,
    point,
    sphere_sphere_orbit,
    squared_distance,
    to_rational,
)


def test_squared_distance_examples():
    assert squared_distance(point(0, 0), point(0, 0)) == 0
    assert squared_distance(point(0, 0), point(3, 4)) == 25
    assert squared_distance(point("1/2", 0, 0, 0), point(0, "1/2", 0, 0)) == F(1, 2)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        squared_distance(point(0, 0), point(0, 0, 0))


def test_floats_rejected():
    with pytest.raises(TypeError):
        to_rational(0.5)
    with pytest.raises(TypeError):
        point(1, True)


def test_on_sphere_examples():
    unit = Sphere(point(0, 0), 1)
    assert on_sphere(point(1, 0), unit)
    assert not on_sphere(point(1, 1), unit)
    assert on_sphere(point("3/5", "4/5"), unit)


def test_on_hyperplane_examples():
    x1 = Hyperplane(point(1, 0, 0), 0)
    assert on_hyperplane(point(0, 0, 0), x1)
    assert not on_hyperplane(point(1, 0, 0), x1)
    assert on_hyperplane(point(1, 2, 3), Hyperplane(point(1, 1, -1), 0))


def test_affine_rank_examples():
    assert affine_rank([point(0, 0)]) == 0
    assert affine_rank([point(0, 0), point(1, 0), point(2, 0)]) == 1
    assert affine_rank([point(0, 0), point(1, 0), point(0, 1)]) == 2


def test_hyperplane_through_examples():
    assert hyperplane_through([point(1, 0), point(0, 1)]) == Hyperplane(point(1, 1), 1)
    assert hyperplane_through([point(0, 0), point(1, 1)]) == Hyperplane(point(1, -1), 0)
    with pytest.raises(DegenerateInput):
        hyperplane_through([point(0, 0), point(0, 0)])


def test_hyperplane_canonical_form():
    h = Hyperplane(point(0, -3, 6), 9)
    assert h.normal == point(0, 1, -2) and h.offset == -3
    assert h == Hyperplane(point(0, 1, -2), -3)
    with pytest.raises(DegenerateInput):
        Hyperplane(point(0, 0), 1)


def test_circumsphere_examples():
    s = circumsphere([point(0, 0), point(2, 0), point(0, 2)])
    assert s == Sphere(point(1, 1), 2)
    pts = [point(1, 0, 0, 0), point(-1, 0, 0, 0), point(0, 1, 0, 0), point(0, 0, 1, 0), point(0, 0, 0, 1)]
    assert circumsphere(pts) == Sphere(point(0, 0, 0, 0), 1)
    with pytest.raises(DegenerateInput):
        circumsphere([point(0, 0), point(1, 0), point(2, 0)])


def test_sphere_rejects_nonpositive_radius():
    with pytest.raises(DegenerateInput):
        Sphere(point(0, 0), 0)


def test_lift_point_examples():
    assert lift_point(point(0, 0)) == point(0, 0, 0)
    assert lift_point(point(1, 2)) == point(1, 2, 5)
    assert lift_point(point("1/2", "1/2")) == point("1/2", "1/2", "1/2")


def test_lift_sphere_examples():
    assert lift_sphere(Sphere(point(0, 0), 1)) == Hyperplane(point(0, 0, 1), 1)
    assert lift_sphere(Sphere(point(1, 0), 1)) == Hyperplane(point(2, 0, -1), 0)
    assert lift_sphere(Sphere(point(0, 0, 0, 0), 1)) == Hyperplane(point(0, 0, 0, 0, 1), 1)


def test_orbit_examples():
    cs = sphere_sphere_orbit(point(0, 0, 0, 0), point(2, 0, 0, 0), 4, 4)
    assert cs.carrier == Hyperplane(point(1, 0, 0, 0), 1)
    assert cs.sphere == Sphere(point(1, 0, 0, 0), 3)
    with pytest.raises(EmptyOrbit) as far:
        sphere_sphere_orbit(point(0, 0, 0, 0), point(4, 0, 0, 0), 1, 1)
    assert not far.value.tangent
    with pytest.raises(EmptyOrbit) as touch:
        sphere_sphere_orbit(point(0, 0, 0, 0), point(2, 0, 0, 0), 1, 1)
    assert touch.value.tangent and touch.value.point == point(1, 0, 0, 0)
    with pytest.raises(IdenticalCenters):
        sphere_sphere_orbit(point(0, 0, 0), point(0, 0, 0), 1, 1)


def test_carried_sphere_needs_center_on_carrier():
    with pytest.raises(DegenerateInput):
        CarriedSphere(Sphere(point(0, 0, 0), 1), Hyperplane(point(1, 0, 0), 1))


# -- properties ---------------------------------------------------------------


def _sympy_rank(pts):
    if len(pts) <= 1:
        return 0
    rows = [[sympy.Rational(a - b) for a, b in zip(p, pts[0])] for p in pts[1:]]
    return sympy.Matrix(rows).rank()


@given(st.integers(1, 4).flatmap(lambda d: st.lists(lattice(d, 2), min_size=1, max_size=6)))
def test_affine_rank_matches_sympy(pts):
    assert affine_rank(pts) == _sympy_rank(pts)


@given(st.integers(1, 4).flatmap(lambda d: st.lists(lattice(d, 2), min_size=1, max_size=6)), st.randoms())
def test_affine_rank_invariances(pts, rnd):
    r = affine_rank(pts)
    shuffled = list(pts)
    rnd.shuffle(shuffled)
    assert affine_rank(shuffled) == r
    # an affine combination of existing points stays in the hull
    extra = tuple(2 * a - b for a, b in zip(pts[0], pts[-1]))
    assert affine_rank(pts + [extra]) == r
    hull = AffineHull(pts)
    assert extra in hull and hull.rank == r


@given(st.integers(2, 4).flatmap(lambda d: st.lists(points(d), min_size=d + 1, max_size=d + 1)))
def test_circumsphere_soundness(pts):
    assume(affine_rank(pts) == len(pts[0]))
    s = circumsphere(pts)
    assert all(on_sphere(p, s) for p in pts)
    # center is equidistant by an independent sympy solve
    d = len(pts[0])
    c = sympy.symbols(f"c0:{d}")
    eqs = [
        sum((ci - sympy.Rational(x)) ** 2 for ci, x in zip(c, p))
        - sum((ci - sympy.Rational(x)) ** 2 for ci, x in zip(c, pts[0]))
        for p in pts[1:]
    ]
    sol = sympy.solve(eqs, c, dict=True)[0]
    assert tuple(F(int(sympy.fraction(sol[ci])[0]), int(sympy.fraction(sol[ci])[1])) for ci in c) == s.center


@given(st.integers(2, 4).flatmap(lambda d: st.lists(points(d), min_size=d, max_size=d)))
def test_hyperplane_through_contains_inputs(pts):
    assume(affine_rank(pts) == len(pts) - 1)
    h = hyperplane_through(pts)
    assert all(on_hyperplane(p, h) for p in pts)


@given(st.integers(1, 4).flatmap(lambda d: st.tuples(points(d), points(d), rationals(9, 3).filter(lambda r: r > 0))))
def test_lifting_preserves_incidence(args):
    p, c, r2 = args
    s = Sphere(c, r2)
    assert on_sphere(p, s) == on_hyperplane(lift_point(p), lift_sphere(s))
    # and the point placed on the sphere exactly, when we can
    q = c[:-1] + (c[-1] + 1,)
    unit = Sphere(c, 1)
    assert on_hyperplane(lift_point(q), lift_sphere(unit))


@given(st.integers(3, 4).flatmap(lambda d: st.tuples(lattice(d, 3), lattice(d, 3), lattice(d, 3))))
def test_orbit_soundness(abc):
    a, b, c = abc
    assume(a != b and c != a and c != b)
    ra2, rb2 = squared_distance(c, a), squared_distance(c, b)
    try:
        cs = sphere_sphere_orbit(a, b, ra2, rb2)
    except EmptyOrbit as e:
        assert e.tangent and e.point == c
        return
    assert on_carried_sphere(c, cs)
    # converse: the mirror image of c across line ab is another orbit point
    ab = [y - x for x, y in zip(a, b)]
    t = sum((z - x) * u for x, z, u in zip(a, c, ab)) / sum(u * u for u in ab)
    mirror = tuple(2 * (x + t * u) - z for x, z, u in zip(a, c, ab))
    assert on_carried_sphere(mirror, cs)
    assert squared_distance(mirror, a) == ra2 and squared_distance(mirror, b) == rb2
    assert not on_carried_sphere(cs.sphere.center, cs)


def test_no_tolerance_anywhere():
    import inspect

    import nondegen.geometry as g

    src = inspect.getsource(g)
    assert "tol" not in src and "isclose" not in src and "float(" not in src
