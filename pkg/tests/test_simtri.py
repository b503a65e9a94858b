from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import lattice
from nondegen.constructions import gen_random_points
from nondegen.errors import DimensionMismatch, DuplicatePoints, InvalidShape
from nondegen.geometry import Hyperplane, on_carried_sphere, point, squared_distance
from nondegen.simtri import (
    TriangleShape,
    build_distance_index,
    count_similar_brute,
    count_similar_orbit,
    orbit_breakdown,
    orbit_sphere_of_pair,
    similarity_test,
)

RIGHT = TriangleShape((2, 1, 1))
EQUI = TriangleShape((1, 1, 1))
SCALENE = TriangleShape((4, F(9, 4), 1))

SQUARE = [point(0, 0), point(1, 0), point(1, 1), point(0, 1)]
SQUARE4 = [p + (F(0), F(0)) for p in SQUARE]


def test_shape_basics():
    assert RIGHT.sq_sides == (2, 1, 1) and RIGHT.aut == 2
    assert EQUI.aut == 6 and SCALENE.aut == 1
    assert TriangleShape((1, 2, 1)).sq_sides == (2, 1, 1)
    assert TriangleShape.parse("4,9/4,1") == SCALENE
    for bad in [(4, 1, 1), (0, 1, 1), (5, 1, 1)]:
        with pytest.raises(InvalidShape):
            TriangleShape(bad)
    with pytest.raises(InvalidShape):
        TriangleShape.parse("1,1")


def test_similarity_examples():
    assert similarity_test(point(0, 0), point(1, 0), point(0, 1), RIGHT)
    assert similarity_test(point(0, 0), point(2, 0), point(0, 2), RIGHT)
    assert not similarity_test(point(0, 0), point(1, 0), point(2, 0), RIGHT)
    assert not similarity_test(point(0, 0), point(1, 0), point(2, 0), EQUI)


def test_square_counts():
    for pts in (SQUARE, SQUARE4):
        assert count_similar_brute(pts, RIGHT) == 4
        assert count_similar_orbit(pts, RIGHT) == 4
        assert count_similar_orbit(pts, RIGHT, ordered=True) == 8
        assert count_similar_brute(pts, EQUI) == 0
        assert count_similar_orbit(pts, EQUI) == 0


def test_no_rational_equilateral_in_plane():
    assert count_similar_orbit([point(0, 0), point(1, 0)], EQUI) == 0
    pts = [point(x, y) for x in range(4) for y in range(4)]
    assert count_similar_orbit(pts, EQUI) == 0 == count_similar_brute(pts, EQUI)


def test_equilateral_in_r3():
    # a regular tetrahedron on alternating cube vertices: 4 equilateral faces
    tet = [point(0, 0, 0), point(1, 1, 0), point(1, 0, 1), point(0, 1, 1)]
    assert count_similar_orbit(tet, EQUI) == 4 == count_similar_brute(tet, EQUI)
    assert count_similar_orbit(tet, EQUI, ordered=True) == 24


def test_duplicates_rejected():
    with pytest.raises(DuplicatePoints):
        count_similar_orbit([point(0, 0), point(0, 0), point(1, 1)], RIGHT)


def test_distance_index_examples():
    idx = build_distance_index([point(0, 0), point(1, 2)])
    assert idx.levels == [{F(5): [1]}, {F(5): [0]}]
    idx = build_distance_index(SQUARE)
    for a, level in enumerate(idx.levels):
        assert sorted(level) == [1, 2]
        assert len(level[F(1)]) == 2 and len(level[F(2)]) == 1


def test_fifty_points_in_q4():
    pts = gen_random_points(50, 4, 2, seed=50)
    assert count_similar_brute(pts, RIGHT) == count_similar_orbit(pts, RIGHT) == 176  # frozen, agrees with the oracle


def test_orbit_sphere_examples():
    cs = orbit_sphere_of_pair(point(0, 0, 0, 0), point(2, 0, 0, 0), EQUI)
    assert cs.carrier == Hyperplane(point(1, 0, 0, 0), 1) and cs.sphere.sq_radius == 3
    with pytest.raises(DimensionMismatch):
        orbit_sphere_of_pair(point(0, 0), point(1, 0), EQUI)


def test_counted_third_vertices_lie_on_orbit_sphere():
    pts = gen_random_points(30, 3, 2, seed=8)
    idx = build_distance_index(pts)
    for shape in (RIGHT, SCALENE, TriangleShape((3, 2, 1))):
        for (a, b), k in orbit_breakdown(pts, shape, idx).items():
            cs = orbit_sphere_of_pair(pts[a], pts[b], shape)
            on = [c for c in range(len(pts)) if c not in (a, b) and on_carried_sphere(pts[c], cs)]
            assert len(on) == k


dims = st.integers(2, 4)
point_sets = dims.flatmap(lambda d: st.lists(lattice(d, 2), min_size=0, max_size=14, unique=True))
shapes = st.sampled_from([RIGHT, EQUI, SCALENE, TriangleShape((5, 4, 1)), TriangleShape((3, 2, 1)), TriangleShape((2, 2, 1))])


@given(point_sets, shapes)
def test_orbit_equals_brute_equals_oracle(pts, shape):
    n = count_similar_orbit(pts, shape)
    assert n == count_similar_brute(pts, shape) == oracles.similar_count(pts, shape.sq_sides)
    assert count_similar_orbit(pts, shape, ordered=True) == shape.aut * n


@given(point_sets)
def test_level_set_identity(pts):
    idx = build_distance_index(pts)
    for a, level in enumerate(idx.levels):
        assert sum(len(b) for b in level.values()) == len(pts) - 1
        members = [b for bucket in level.values() for b in bucket]
        assert sorted(members) == [b for b in range(len(pts)) if b != a]
        assert all(squared_distance(pts[a], pts[b]) == r for r, bucket in level.items() for b in bucket)


@given(point_sets, shapes, st.randoms(), st.integers(1, 3), st.integers(-3, 3))
def test_similarity_invariance(pts, shape, rnd, scale, shift):
    n = count_similar_orbit(pts, shape)
    if not pts:
        return
    perm = list(range(len(pts[0])))
    rnd.shuffle(perm)
    moved = [tuple(scale * p[i] + shift for i in perm) for p in pts]
    assert count_similar_orbit(moved, shape) == n
    assert count_similar_brute(moved, shape) == n
