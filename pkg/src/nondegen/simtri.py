"""Counting triangles similar to a fixed shape.

Two independent counters: a plain O(n^3) scan, and the orbit method, which
fixes the base (a, b) as the longest side and finds every third vertex c with
one lookup in a's squared-distance level sets.  Shapes are given by squared
side lengths so everything stays rational.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Dict, List, Sequence, Tuple

from .errors import CoincidentPoints, DimensionMismatch, DuplicatePoints, InternalError, InvalidShape
from .geometry import CarriedSphere, RationalPoint, sphere_sphere_orbit, squared_distance, to_rational


@dataclass(frozen=True)
class TriangleShape:
    """Squared side lengths sorted longest first, plus the automorphism count."""

    sq_sides: Tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        sides = tuple(sorted((to_rational(x) for x in self.sq_sides), reverse=True))
        if len(sides) != 3:
            raise InvalidShape("a triangle has three sides")
        if sides[2] <= 0:
            raise InvalidShape("squared side lengths must be positive")
        a, b, c = sides
        # 16 * area^2 in terms of squared sides; positive iff a genuine triangle
        if 2 * (a * b + a * c + b * c) <= a * a + b * b + c * c:
            raise InvalidShape(f"squared sides {a}, {b}, {c} violate the triangle inequality")
        object.__setattr__(self, "sq_sides", sides)

    @classmethod
    def parse(cls, text: str) -> "TriangleShape":
        parts = text.split(",")
        if len(parts) != 3:
            raise InvalidShape(f"expected L2,s2,s3, got {text!r}")
        return cls(tuple(to_rational(p.strip()) for p in parts))

    @property
    def aut(self) -> int:
        a, b, c = self.sq_sides
        if a == c:
            return 6
        if a == b or b == c:
            return 2
        return 1


def _check_distinct(points: Sequence[RationalPoint]) -> None:
    if len(set(points)) != len(points):
        raise DuplicatePoints("input contains repeated points")
    if points and any(len(p) != len(points[0]) for p in points):
        raise DimensionMismatch("points of mixed dimension")


def similarity_test(a: RationalPoint, b: RationalPoint, c: RationalPoint, shape: TriangleShape) -> bool:
    if a == b or b == c or a == c:
        raise CoincidentPoints("triangle with repeated vertices")
    dmax, dmid, dmin = sorted(
        (squared_distance(a, b), squared_distance(a, c), squared_distance(b, c)), reverse=True
    )
    big, s2, s3 = shape.sq_sides
    return dmax * s2 == dmid * big and dmax * s3 == dmin * big


def _integer_distances(points: Sequence[RationalPoint]) -> List[List[int]]:
    """Squared distances after scaling every coordinate to an integer.

    Similarity is scale invariant, so counting on the scaled copy is exact.
    """
    den = lcm(*(c.denominator for p in points for c in p)) if points else 1
    ints = [[int(c * den) for c in p] for p in points]
    return [[sum((x - y) * (x - y) for x, y in zip(p, q)) for q in ints] for p in ints]


def count_similar_brute(points: Sequence[RationalPoint], shape: TriangleShape) -> int:
    """Unordered triples similar to ``shape``, by checking every triple."""
    points = list(points)
    _check_distinct(points)
    dist = _integer_distances(points)
    den = lcm(*(s.denominator for s in shape.sq_sides))
    big, s2, s3 = (int(s * den) for s in shape.sq_sides)
    count = 0
    for i, j, k in combinations(range(len(points)), 3):
        dmax, dmid, dmin = sorted((dist[i][j], dist[i][k], dist[j][k]), reverse=True)
        if dmax * s2 == dmid * big and dmax * s3 == dmin * big:
            count += 1
    return count


@dataclass
class DistanceIndex:
    """For every anchor a, squared distance r -> sorted indices at distance r.

    ``levels[a]`` is ordered by increasing r; it holds every point but a.
    """

    sqdist: List[List[Fraction]]
    levels: List[Dict[Fraction, List[int]]]

    def distances(self, a: int) -> List[Fraction]:
        return list(self.levels[a])


def build_distance_index(points: Sequence[RationalPoint]) -> DistanceIndex:
    points = list(points)
    _check_distinct(points)
    n = len(points)
    sq = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            sq[i][j] = sq[j][i] = squared_distance(points[i], points[j])
    levels = []
    for a in range(n):
        buckets = defaultdict(list)
        for b in range(n):
            if b != a:
                buckets[sq[a][b]].append(b)
        levels.append({r: buckets[r] for r in sorted(buckets)})
    return DistanceIndex(sq, levels)


def orbit_breakdown(points: Sequence[RationalPoint], shape: TriangleShape, index: DistanceIndex = None) -> Dict[Tuple[int, int], int]:
    """For each ordered base (a, b), the number of c with
    ``|ab|^2 : |ac|^2 : |bc|^2 = L2 : s2 : s3``.  Zero entries are omitted."""
    if index is None:
        index = build_distance_index(points)
    big, s2, s3 = shape.sq_sides
    ratio_ac, ratio_bc = s2 / big, s3 / big
    sq = index.sqdist
    out = {}
    for a, level in enumerate(index.levels):
        for r, bases in level.items():
            bucket = level.get(r * ratio_ac)
            if not bucket:
                continue
            want = r * ratio_bc
            for b in bases:
                row = sq[b]
                hits = sum(1 for c in bucket if c != b and row[c] == want)
                if hits:
                    out[(a, b)] = hits
    return out


def count_similar_orbit(points: Sequence[RationalPoint], shape: TriangleShape, ordered: bool = False) -> int:
    """Triangles similar to ``shape`` via squared-distance level sets.

    Each unordered triangle is met once per role assignment that preserves the
    shape, i.e. ``shape.aut`` times; the ordered total is divided by that.
    """
    total = sum(orbit_breakdown(points, shape).values())
    if ordered:
        return total
    if total % shape.aut:
        raise InternalError(f"ordered total {total} is not divisible by {shape.aut}")
    return total // shape.aut


def orbit_sphere_of_pair(a: RationalPoint, b: RationalPoint, shape: TriangleShape) -> CarriedSphere:
    """Locus of c with ab longest and ac second longest in a copy of ``shape``."""
    if len(a) < 3:
        raise DimensionMismatch("orbit spheres need ambient dimension at least 3")
    r = squared_distance(a, b)
    big, s2, s3 = shape.sq_sides
    return sphere_sphere_orbit(a, b, r * s2 / big, r * s3 / big)
