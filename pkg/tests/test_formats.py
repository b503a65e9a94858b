from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import points, rationals
from nondegen.errors import FormatError
from nondegen.formats import (
    dumps_certificate,
    dumps_graph,
    dumps_planes,
    dumps_points,
    dumps_report,
    dumps_setsystem,
    dumps_spheres,
    loads_graph,
    loads_planes,
    loads_points,
    loads_setsystem,
    loads_spheres,
    parse_rational,
)
from nondegen.geometry import Hyperplane, Sphere, point
from nondegen.incidence import BipartiteIncidenceGraph, check_dually_nondegenerate, check_nondegenerate
from nondegen.setsystem import SetSystem, peel_certify


@pytest.mark.parametrize("text,value", [("3", F(3)), ("-2/4", F(-1, 2)), ("+7/1", F(7)), ("0", F(0))])
def test_parse_rational_accepts(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["0.5", "1e3", "1/0", "", "a", "1/-2", "nan"])
def test_parse_rational_rejects(text):
    with pytest.raises(FormatError):
        parse_rational(text)


def test_point_file_layout():
    text = dumps_points([point(1, "-1/2"), point(0, 3)], comments=["# seed: 4"])
    assert text == "# seed: 4\ndim 2\n1 -1/2\n0 3\n"
    pf = loads_points(text)
    assert pf.dim == 2 and pf.points == [point(1, "-1/2"), point(0, 3)] and pf.comments == ["# seed: 4"]


def test_sphere_file_layout():
    text = dumps_spheres([Sphere(point(1, 0), F(9, 4))])
    assert text == "dim 2\n1 0 ; 9/4\n"
    assert loads_spheres(text).spheres == [Sphere(point(1, 0), F(9, 4))]


def test_plane_file_layout():
    text = dumps_planes([Hyperplane(point(2, 4), 6)])
    assert text == "dim 2\n1 2 ; 3\n"
    assert loads_planes(text).planes == [Hyperplane(point(1, 2), 3)]


@pytest.mark.parametrize(
    "text",
    [
        "",
        "dim 0\n",
        "dim 2\n1 2 3\n",
        "dim 2\n1 0.5\n",
        "dimension 2\n1 1\n",
    ],
)
def test_bad_point_files(text):
    with pytest.raises(FormatError):
        loads_points(text)


@pytest.mark.parametrize("text", ["dim 2\n0 0\n", "dim 2\n0 0 ; 0\n", "dim 2\n0 0 ; 1 ; 2\n"])
def test_bad_sphere_files(text):
    with pytest.raises(FormatError):
        loads_spheres(text)


def test_graph_file_layout():
    g = BipartiteIncidenceGraph(3, [[0, 2], [1]])
    text = dumps_graph(g)
    assert text == "3 2\n0 0\n1 1\n2 0\n"
    assert loads_graph(text) == g


@pytest.mark.parametrize("text", ["", "2 2\n1 0\n0 0\n", "2 2\n0 0\n0 0\n", "2 2\n2 0\n", "2 2\n0 -1\n"])
def test_bad_graph_files(text):
    with pytest.raises(FormatError):
        loads_graph(text)


def test_setsystem_layout_with_empty_set():
    s = SetSystem(3, [{0, 2}, set(), {1}])
    text = dumps_setsystem(s)
    assert text == "ground 3\n0 2\n\n1\n"
    assert loads_setsystem(text) == s


@pytest.mark.parametrize("text", ["ground 2\n3\n", "ground 2\n1 0\n", "ground x\n", "ground 2\n1 1\n"])
def test_bad_setsystem_files(text):
    with pytest.raises(FormatError):
        loads_setsystem(text)


def test_report_serialization():
    k22 = BipartiteIncidenceGraph(2, [[0, 1], [0, 1]])
    assert dumps_report(check_nondegenerate(k22, F(99, 100))) == "verdict false\n0 1 2 2\n1 0 2 2\n"
    matching = BipartiteIncidenceGraph(2, [[0], [1]])
    assert dumps_report(check_nondegenerate(matching, F(9, 10))) == "verdict true\n"
    dual = dumps_report(check_dually_nondegenerate(k22, F(99, 100)))
    assert dual.splitlines()[1:] == ["Q 0 1 2 2", "Q 1 0 2 2", "P 0 1 2 2", "P 1 0 2 2"]


def test_certificate_serialization():
    cert = peel_certify(BipartiteIncidenceGraph(3, [[0], [1], [2]]), F(1, 2))
    assert dumps_certificate(cert) == "0 1 1 2/1\n1 2 1 2/1\nfinal_degree 1\nbound 5/1\n"


# -- round trips ----------------------------------------------------------------


@given(st.integers(1, 4).flatmap(lambda d: st.lists(points(d), max_size=8).map(lambda p: (d, p))))
def test_points_round_trip(arg):
    d, pts = arg
    text = dumps_points(pts, d, ["# seed: 1"])
    pf = loads_points(text)
    assert pf.points == pts
    assert dumps_points(pf.points, pf.dim, pf.comments) == text


@given(st.lists(st.tuples(points(3), rationals().filter(lambda r: r > 0)), max_size=6))
def test_spheres_round_trip(rows):
    spheres = [Sphere(c, r) for c, r in rows]
    text = dumps_spheres(spheres, 3)
    sf = loads_spheres(text)
    assert sf.spheres == spheres and dumps_spheres(sf.spheres, sf.dim, sf.comments) == text


@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_graph_round_trip(m, n, data):
    nbrs = [sorted(data.draw(st.sets(st.integers(0, m - 1)))) for _ in range(n)]
    g = BipartiteIncidenceGraph(m, nbrs)
    text = dumps_graph(g, ["# seed: 9"])
    h = loads_graph(text)
    assert h == g and dumps_graph(h, h.comments) == text


@given(st.integers(0, 6), st.data())
def test_setsystem_round_trip(g, data):
    sets = data.draw(st.lists(st.sets(st.integers(0, g - 1)) if g else st.just(set()), max_size=6))
    system = SetSystem(g, sets)
    text = dumps_setsystem(system)
    back = loads_setsystem(text)
    assert back == system and dumps_setsystem(back, back.comments) == text
