"""Exact rational geometry: points, hyperplanes, spheres and the lifting map.

Points are plain tuples of :class:`fractions.Fraction`.  Spheres are stored as
(center, squared radius) so no irrational quantity is ever formed, and every
predicate here is an exact equality test.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Tuple

from .errors import DegenerateInput, DimensionMismatch, EmptyOrbit, IdenticalCenters

RationalPoint = Tuple[Fraction, ...]


def to_rational(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: they would silently smuggle rounding into exact tests.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        from .formats import parse_rational

        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} {x!r} as an exact rational")


def as_point(coords: Iterable) -> RationalPoint:
    return tuple(to_rational(c) for c in coords)


def point(*coords) -> RationalPoint:
    return as_point(coords)


def _check_dims(p: Sequence, q: Sequence) -> None:
    if len(p) != len(q):
        raise DimensionMismatch(f"dimension {len(p)} vs {len(q)}")


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    _check_dims(u, v)
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def squared_distance(p: RationalPoint, q: RationalPoint) -> Fraction:
    _check_dims(p, q)
    return sum(((a - b) * (a - b) for a, b in zip(p, q)), Fraction(0))


@dataclass(frozen=True)
class Hyperplane:
    """The hyperplane ``normal . x = offset``, scaled so the first nonzero
    normal entry is 1.  Equal hyperplanes therefore compare and hash equal."""

    normal: RationalPoint
    offset: Fraction

    def __post_init__(self):
        normal = as_point(self.normal)
        offset = to_rational(self.offset)
        lead = next((c for c in normal if c != 0), None)
        if lead is None:
            raise DegenerateInput("hyperplane normal is the zero vector")
        object.__setattr__(self, "normal", tuple(c / lead for c in normal))
        object.__setattr__(self, "offset", offset / lead)

    @property
    def dim(self) -> int:
        return len(self.normal)


@dataclass(frozen=True)
class Sphere:
    """A (dim-1)-sphere in R^dim given by its center and squared radius."""

    center: RationalPoint
    sq_radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        r2 = to_rational(self.sq_radius)
        if r2 <= 0:
            raise DegenerateInput(f"squared radius must be positive, got {r2}")
        object.__setattr__(self, "sq_radius", r2)

    @property
    def dim(self) -> int:
        return len(self.center)


@dataclass(frozen=True)
class CarriedSphere:
    """A (dim-2)-sphere: ``sphere`` cut down to its ``carrier`` hyperplane,
    whose center lies on the carrier."""

    sphere: Sphere
    carrier: Hyperplane

    def __post_init__(self):
        if not on_hyperplane(self.sphere.center, self.carrier):
            raise DegenerateInput("carrier does not pass through the sphere center")

    @property
    def dim(self) -> int:
        return self.sphere.dim


def on_sphere(p: RationalPoint, s: Sphere) -> bool:
    return squared_distance(p, s.center) == s.sq_radius


def on_hyperplane(p: RationalPoint, h: Hyperplane) -> bool:
    return dot(h.normal, p) == h.offset


def on_carried_sphere(p: RationalPoint, cs: CarriedSphere) -> bool:
    return on_hyperplane(p, cs.carrier) and on_sphere(p, cs.sphere)


# -- exact linear algebra --------------------------------------------------


class _RowSpace:
    """Incrementally maintained echelon basis over Q."""

    def __init__(self, width: int):
        self.width = width
        self.rows: list = []  # (pivot column, row) with row[pivot] == 1

    def reduce(self, v):
        v = list(v)
        for piv, row in self.rows:
            c = v[piv]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def add(self, v) -> bool:
        """Insert ``v``; return True when it enlarged the span."""
        v = self.reduce(v)
        piv = next((i for i, c in enumerate(v) if c != 0), None)
        if piv is None:
            return False
        lead = v[piv]
        v = [c / lead for c in v]
        self.rows.append((piv, v))
        return True

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    @property
    def rank(self) -> int:
        return len(self.rows)


def _dims_of(pts: Sequence[RationalPoint]) -> int:
    d = len(pts[0])
    for p in pts[1:]:
        if len(p) != d:
            raise DimensionMismatch(f"dimension {d} vs {len(p)}")
    return d


def affine_rank(pts: Sequence[RationalPoint]) -> int:
    """Dimension of the affine hull of ``pts`` (0 for a single point)."""
    if not pts:
        raise DegenerateInput("affine rank of an empty point list")
    d = _dims_of(pts)
    space = _RowSpace(d)
    base = pts[0]
    for p in pts[1:]:
        space.add([a - b for a, b in zip(p, base)])
        if space.rank == d:
            break
    return space.rank


class AffineHull:
    """Affine hull of a point list, with exact membership tests."""

    def __init__(self, pts: Sequence[RationalPoint]):
        if not pts:
            raise DegenerateInput("affine hull of an empty point list")
        self.dim = _dims_of(pts)
        self.base = pts[0]
        self._space = _RowSpace(self.dim)
        for p in pts[1:]:
            self._space.add([a - b for a, b in zip(p, self.base)])

    @property
    def rank(self) -> int:
        return self._space.rank

    def __contains__(self, p: RationalPoint) -> bool:
        _check_dims(p, self.base)
        return self._space.contains([a - b for a, b in zip(p, self.base)])


def _rref(rows: list):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    width = len(m[0]) if m else 0
    for col in range(width):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][col]
        m[r] = [c / lead for c in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _solve(a: list, b: list):
    """Solve the square system ``a x = b`` exactly; None when singular."""
    n = len(a)
    m = [list(row) + [rhs] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        lead = m[col][col]
        m[col] = [c / lead for c in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n] for row in m]


def hyperplane_through(pts: Sequence[RationalPoint]) -> Hyperplane:
    """The unique hyperplane through ``d`` points of R^d."""
    if not pts:
        raise DegenerateInput("no points given")
    d = _dims_of(pts)
    if len(pts) != d:
        raise DegenerateInput(f"need exactly {d} points in R^{d}, got {len(pts)}")
    # kernel of the rows [p_i | -1] acting on (normal, offset)
    rows, pivots = _rref([list(p) + [Fraction(-1)] for p in pts])
    if len(pivots) < d:
        raise DegenerateInput("points do not span a unique hyperplane")
    free = next(i for i in range(d + 1) if i not in pivots)
    sol = [Fraction(0)] * (d + 1)
    sol[free] = Fraction(1)
    for piv, row in zip(pivots, rows):
        sol[piv] = -row[free]
    return Hyperplane(tuple(sol[:d]), sol[d])


def circumsphere(pts: Sequence[RationalPoint]) -> Sphere:
    """The unique sphere through ``d+1`` affinely independent points of R^d.

    Solves ``2 (p_i - p_0) . c = |p_i|^2 - |p_0|^2`` for the center ``c``.
    """
    if not pts:
        raise DegenerateInput("no points given")
    d = _dims_of(pts)
    if len(pts) != d + 1:
        raise DegenerateInput(f"need exactly {d + 1} points in R^{d}, got {len(pts)}")
    p0 = pts[0]
    n0 = dot(p0, p0)
    a = [[2 * (x - y) for x, y in zip(p, p0)] for p in pts[1:]]
    b = [dot(p, p) - n0 for p in pts[1:]]
    center = _solve(a, b)
    if center is None:
        raise DegenerateInput("points lie on a common hyperplane")
    center = tuple(center)
    return Sphere(center, squared_distance(p0, center))


def lift_point(p: RationalPoint) -> RationalPoint:
    """Map p onto the paraboloid: append the sum of squared coordinates."""
    p = as_point(p)
    return p + (dot(p, p),)


def lift_sphere(s: Sphere) -> Hyperplane:
    """Hyperplane in R^{d+1} whose trace on the paraboloid is the lifted sphere.

    ``|x - c|^2 = r^2`` rewrites as ``2 c . x - x_{d+1} = |c|^2 - r^2`` once
    ``|x|^2`` is replaced by the extra coordinate.
    """
    c = s.center
    return Hyperplane(tuple(2 * ci for ci in c) + (Fraction(-1),), dot(c, c) - s.sq_radius)


def sphere_sphere_orbit(a: RationalPoint, b: RationalPoint, ra2, rb2) -> CarriedSphere:
    """Intersection of the spheres |x-a|^2 = ra2 and |x-b|^2 = rb2.

    Raises ``EmptyOrbit`` when the intersection is empty or a single point
    (``tangent=True``, with the point attached).
    """
    a, b = as_point(a), as_point(b)
    _check_dims(a, b)
    ra2, rb2 = to_rational(ra2), to_rational(rb2)
    if ra2 <= 0 or rb2 <= 0:
        raise DegenerateInput("squared radii must be positive")
    if a == b:
        raise IdenticalCenters("sphere centers coincide")
    normal = tuple(2 * (y - x) for x, y in zip(a, b))
    offset = dot(b, b) - dot(a, a) + ra2 - rb2
    nn = dot(normal, normal)
    t = (offset - dot(normal, a)) / nn
    foot = tuple(x + t * n for x, n in zip(a, normal))
    r2 = ra2 - t * t * nn
    if r2 < 0:
        raise EmptyOrbit("spheres are disjoint")
    if r2 == 0:
        raise EmptyOrbit("spheres are tangent", tangent=True, point=foot)
    return CarriedSphere(Sphere(foot, r2), Hyperplane(normal, offset))
