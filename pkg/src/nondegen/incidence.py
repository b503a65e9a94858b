"""Incidence graphs between points and spheres/hyperplanes, and nondegeneracy.

Two notions live here.  The graph notion: q is beta-nondegenerate when
``|N(q) & N(q')| < beta |N(q)|`` for every other q'.  The geometric notion:
a sphere is degenerate when a proper subsphere holds ``>= beta`` of its points,
a hyperplane when a lower flat inside it holds ``> beta`` of its points.  The
thresholds differ on purpose (strict vs non-strict); do not unify them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, lcm
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse

from .errors import BetaOutOfRange, DimensionMismatch, NondegenError
from .geometry import (
    AffineHull,
    Hyperplane,
    RationalPoint,
    Sphere,
    affine_rank,
    circumsphere,
    hyperplane_through,
    on_hyperplane,
    on_sphere,
    to_rational,
)


def check_beta(beta) -> Fraction:
    beta = to_rational(beta)
    if not 0 < beta < 1:
        raise BetaOutOfRange(f"beta must lie strictly between 0 and 1, got {beta}")
    return beta


class BipartiteIncidenceGraph:
    """Bipartite graph G = (P, Q) stored as the sorted neighbor list of each q.

    ``neighbors[j]`` is N(q_j), a sorted tuple of P-indices in ``range(m)``.
    """

    def __init__(self, m: int, neighbors: Sequence[Sequence[int]], right_tags=None, left_tags=None):
        if m < 0:
            raise ValueError("m must be nonnegative")
        nb = []
        for j, row in enumerate(neighbors):
            row = tuple(sorted(set(int(i) for i in row)))
            if row and (row[0] < 0 or row[-1] >= m):
                raise ValueError(f"neighbor of q{j} outside range(0, {m})")
            nb.append(row)
        self.m = m
        self.neighbors: Tuple[Tuple[int, ...], ...] = tuple(nb)
        self.right_tags = right_tags
        self.left_tags = left_tags
        self.comments: List[str] = []
        self._sets = None

    @property
    def n(self) -> int:
        return len(self.neighbors)

    @property
    def edge_count(self) -> int:
        return sum(len(r) for r in self.neighbors)

    def N(self, q: int) -> Tuple[int, ...]:
        return self.neighbors[q]

    def neighbor_sets(self):
        if self._sets is None:
            self._sets = [frozenset(r) for r in self.neighbors]
        return self._sets

    def degrees(self) -> np.ndarray:
        return np.array([len(r) for r in self.neighbors], dtype=np.int64)

    def transpose(self) -> "BipartiteIncidenceGraph":
        rows = [[] for _ in range(self.m)]
        for j, row in enumerate(self.neighbors):
            for i in row:
                rows[i].append(j)
        return BipartiteIncidenceGraph(self.n, rows, right_tags=self.left_tags, left_tags=self.right_tags)

    def adjacency(self) -> sparse.csr_matrix:
        """n x m 0/1 matrix with a row per q."""
        indptr = np.cumsum([0] + [len(r) for r in self.neighbors])
        indices = np.fromiter((i for r in self.neighbors for i in r), dtype=np.int64, count=int(indptr[-1]))
        data = np.ones(len(indices), dtype=np.int64)
        return sparse.csr_matrix((data, indices, indptr), shape=(self.n, self.m))

    def intersection_matrix(self) -> np.ndarray:
        """Dense n x n matrix of ``|N(q) & N(q')|``."""
        a = self.adjacency()
        return np.asarray((a @ a.T).todense(), dtype=np.int64)

    def __eq__(self, other):
        return (
            isinstance(other, BipartiteIncidenceGraph)
            and self.m == other.m
            and self.neighbors == other.neighbors
        )

    def __repr__(self):
        return f"BipartiteIncidenceGraph(m={self.m}, n={self.n}, edges={self.edge_count})"


# -- building ----------------------------------------------------------------


def _float_candidates(points, objects, spheres: bool) -> Optional[np.ndarray]:
    """Boolean (m, n) mask that over-approximates the incidence relation.

    A float pre-pass only; every candidate is confirmed exactly afterwards, so
    the tolerance only has to be generous, never tight.
    """
    with np.errstate(all="ignore"):
        p = np.array([[float(c) for c in pt] for pt in points], dtype=np.float64)
        if spheres:
            c = np.array([[float(x) for x in s.center] for s in objects], dtype=np.float64)
            r2 = np.array([float(s.sq_radius) for s in objects], dtype=np.float64)
            pp = np.einsum("ij,ij->i", p, p)
            cc = np.einsum("ij,ij->i", c, c)
            val = pp[:, None] - 2.0 * (p @ c.T) + cc[None, :] - r2[None, :]
            scale = pp[:, None] + cc[None, :] + 2.0 * np.sqrt(pp[:, None] * cc[None, :]) + r2[None, :]
        else:
            nrm = np.array([[float(x) for x in h.normal] for h in objects], dtype=np.float64)
            off = np.array([float(h.offset) for h in objects], dtype=np.float64)
            val = p @ nrm.T - off[None, :]
            scale = np.abs(p) @ np.abs(nrm).T + np.abs(off)[None, :]
        if not (np.all(np.isfinite(val)) and np.all(np.isfinite(scale))):
            return None
        return np.abs(val) <= 1e-9 * scale + 1e-300


def build_incidence(points: Sequence[RationalPoint], objects: Sequence, accelerate: bool = True) -> BipartiteIncidenceGraph:
    """Incidence graph with an edge (p_i, q_j) iff point i lies on object j.

    ``objects`` is a list of spheres or a list of hyperplanes.  With
    ``accelerate`` a vectorized float pass proposes candidate pairs which are
    then checked with the exact predicate; the result is identical either way.
    """
    objects = list(objects)
    points = list(points)
    if not objects:
        return BipartiteIncidenceGraph(len(points), [])
    spheres = isinstance(objects[0], Sphere)
    kind = Sphere if spheres else Hyperplane
    if not all(isinstance(o, kind) for o in objects):
        raise TypeError("objects must be all spheres or all hyperplanes")
    d = objects[0].dim
    if any(o.dim != d for o in objects):
        raise DimensionMismatch("objects of mixed dimension")
    for p in points:
        if len(p) != d:
            raise DimensionMismatch(f"point of dimension {len(p)} vs objects of dimension {d}")
    pred = on_sphere if spheres else on_hyperplane

    mask = _float_candidates(points, objects, spheres) if (accelerate and points) else None
    rows = []
    for j, obj in enumerate(objects):
        cand = range(len(points)) if mask is None else np.flatnonzero(mask[:, j])
        rows.append([int(i) for i in cand if pred(points[i], obj)])
    return BipartiteIncidenceGraph(len(points), rows, right_tags=objects, left_tags=points)


# -- graph nondegeneracy --------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    q: int
    other: int
    intersection: int
    degree: int
    side: str = "Q"


@dataclass
class NondegeneracyReport:
    beta: Fraction
    verdict: bool
    witnesses: List[Witness] = field(default_factory=list)
    dual: bool = False


def is_vertex_nondegenerate(g: BipartiteIncidenceGraph, q: int, beta) -> bool:
    beta = check_beta(beta)
    if not 0 <= q < g.n:
        raise IndexError(f"vertex {q} outside range(0, {g.n})")
    sets = g.neighbor_sets()
    mine = sets[q]
    deg = len(mine)
    for j, other in enumerate(sets):
        if j != q and len(mine & other) * beta.denominator >= beta.numerator * deg:
            return False
    return True


def _violations(g: BipartiteIncidenceGraph, beta: Fraction, cap, side="Q"):
    if g.n < 2:
        return False, []
    inter = g.intersection_matrix()
    deg = g.degrees()
    bad = inter * beta.denominator >= beta.numerator * deg[:, None]
    np.fill_diagonal(bad, False)
    qs, others = np.nonzero(bad)
    if len(qs) == 0:
        return False, []
    if cap is not None:
        qs, others = qs[:cap], others[:cap]
    return True, [
        Witness(int(a), int(b), int(inter[a, b]), int(deg[a]), side) for a, b in zip(qs, others)
    ]


def _check_cap(cap):
    if cap is not None and cap < 1:
        raise ValueError("max_witnesses must be at least 1")


def check_nondegenerate(g: BipartiteIncidenceGraph, beta, max_witnesses: Optional[int] = None) -> NondegeneracyReport:
    """Decide whether every q in Q is beta-nondegenerate.

    Witnesses are ordered pairs (q, q') with ``|N(q) & N(q')| >= beta |N(q)|``
    in lexicographic order, truncated to ``max_witnesses``.
    """
    beta = check_beta(beta)
    _check_cap(max_witnesses)
    violated, wit = _violations(g, beta, max_witnesses)
    return NondegeneracyReport(beta, not violated, wit)


def check_dually_nondegenerate(g: BipartiteIncidenceGraph, beta, max_witnesses: Optional[int] = None) -> NondegeneracyReport:
    """Q must be nondegenerate with respect to P and P with respect to Q.

    P-side witnesses carry ``side="P"`` and index into P.
    """
    beta = check_beta(beta)
    _check_cap(max_witnesses)
    bad_q, wq = _violations(g, beta, max_witnesses, "Q")
    bad_p, wp = _violations(g.transpose(), beta, max_witnesses, "P")
    wit = wq + wp
    if max_witnesses is not None:
        wit = wit[:max_witnesses]
    return NondegeneracyReport(beta, not (bad_q or bad_p), wit, dual=True)


# -- geometric nondegeneracy ------------------------------------------------------


def _distinct_spans(n: int, k: int, members_of):
    """Walk the k-subsets of range(n), skipping any already inside a found object.

    ``members_of(combo)`` returns the index set of the object the subset spans,
    or None when it spans nothing.  Every k-subset of a found object is marked
    covered, so each object is reported once, from its first spanning subset.
    """
    covered = set()
    for combo in combinations(range(n), k):
        if combo in covered:
            continue
        members = members_of(combo)
        if members is None:
            continue
        covered.update(combinations(sorted(members), k))
        yield combo, members


def _integer_rows(w: Sequence[RationalPoint]) -> List[List[int]]:
    """Coordinates scaled by a common denominator; incidences are unchanged."""
    den = lcm(*(c.denominator for p in w for c in p)) if w else 1
    return [[int(c * den) for c in p] for p in w]


def _det(m: List[List[int]]) -> int:
    """Bareiss fraction-free determinant of a small integer matrix."""
    m = [row[:] for row in m]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def _normal(diffs: List[List[int]], d: int) -> Optional[List[int]]:
    """Cofactor vector orthogonal to d-1 vectors of Z^d; None if they are dependent."""
    nrm = [(-1) ** k * _det([row[:k] + row[k + 1:] for row in diffs]) for k in range(d)]
    return nrm if any(nrm) else None


def _sections(w: List[RationalPoint], d: int):
    """Yield the point-index sets of distinct hyperplane sections of W."""
    iw = _integer_rows(w)

    def members(combo):
        base = iw[combo[0]]
        nrm = _normal([[a - b for a, b in zip(iw[i], base)] for i in combo[1:]], d)
        if nrm is None:
            return None
        off = sum(x * y for x, y in zip(nrm, base))
        return frozenset(i for i, p in enumerate(iw) if sum(x * y for x, y in zip(nrm, p)) == off)

    for _, found in _distinct_spans(len(w), d, members):
        yield found


def _subflats(w: List[RationalPoint], h: Hyperplane):
    """Yield the point-index sets of distinct (d-2)-flats spanned inside W.

    W lies in H, so dropping a coordinate where H's normal is nonzero maps H
    bijectively onto R^{d-1}, and the flats become hyperplane sections there.
    """
    k = next(i for i, c in enumerate(h.normal) if c != 0)
    yield from _sections([p[:k] + p[k + 1:] for p in w], h.dim - 1)


def richest_subsphere(points: Sequence[RationalPoint], s: Sphere) -> Tuple[int, int]:
    """(most points of P on a proper subsphere of S, |S & P|).

    Every proper subsphere is contained in a hyperplane section, so the richest
    section is the answer.  When S & P does not affinely span R^d, all of it
    sits in one section.
    """
    w = [p for p in points if on_sphere(p, s)]
    d = s.dim
    if not w:
        return 0, 0
    if affine_rank(w) < d:
        return len(w), len(w)
    return max(len(f) for f in _sections(w, d)), len(w)


def richest_subflat(points: Sequence[RationalPoint], h: Hyperplane) -> Tuple[int, int]:
    """(most points of P on a (d-2)-flat inside H, |H & P|)."""
    w = [p for p in points if on_hyperplane(p, h)]
    d = h.dim
    if not w:
        return 0, 0
    if affine_rank(w) < d - 1:
        return len(w), len(w)
    return max(len(f) for f in _subflats(w, h)), len(w)


def geometric_nondegeneracy_sphere(points: Sequence[RationalPoint], s: Sphere, beta) -> bool:
    """False iff some proper subsphere of S holds at least beta |S & P| points."""
    beta = check_beta(beta)
    w = [p for p in points if on_sphere(p, s)]
    d = s.dim
    threshold = beta * len(w)
    if not w or affine_rank(w) < d:
        return False  # one section already holds all of W, including the empty case
    return not any(len(f) >= threshold for f in _sections(w, d))


def geometric_nondegeneracy_hyperplane(points: Sequence[RationalPoint], h: Hyperplane, beta) -> bool:
    """False iff some (d-2)-flat inside H holds more than beta |H & P| points."""
    beta = check_beta(beta)
    w = [p for p in points if on_hyperplane(p, h)]
    d = h.dim
    if not w or affine_rank(w) < d - 1:
        return False  # as for spheres, an empty object is degenerate
    threshold = beta * len(w)
    return not any(len(f) > threshold for f in _subflats(w, h))


# -- spanning objects -----------------------------------------------------------


def _dim_of(points):
    d = len(points[0])
    if d < 2:
        raise NondegenError("spanning objects need dimension at least 2")
    if any(len(p) != d for p in points):
        raise DimensionMismatch("points of mixed dimension")
    return d


def spanning_hyperplanes(points: Sequence[RationalPoint]) -> List[Hyperplane]:
    """Distinct hyperplanes through d points of P in general position."""
    points = list(points)
    if not points:
        return []
    d = _dim_of(points)
    out: List[Hyperplane] = []

    def members(combo):
        pts = [points[i] for i in combo]
        if affine_rank(pts) < d - 1:
            return None
        h = hyperplane_through(pts)
        out.append(h)
        return frozenset(i for i, p in enumerate(points) if on_hyperplane(p, h))

    for _ in _distinct_spans(len(points), d, members):
        pass
    return out


def spanning_spheres(points: Sequence[RationalPoint]) -> List[Sphere]:
    """Distinct spheres through d+1 affinely independent points of P."""
    points = list(points)
    if not points:
        return []
    d = _dim_of(points)
    out: List[Sphere] = []

    def members(combo):
        pts = [points[i] for i in combo]
        if affine_rank(pts) < d:
            return None
        s = circumsphere(pts)
        out.append(s)
        return frozenset(i for i, p in enumerate(points) if on_sphere(p, s))

    for _ in _distinct_spans(len(points), d + 1, members):
        pass
    return out


def count_spanning_hyperplanes(points: Sequence[RationalPoint]) -> int:
    return len(spanning_hyperplanes(points))


def count_spanning_spheres(points: Sequence[RationalPoint]) -> int:
    return len(spanning_spheres(points))


def is_spanning_hyperplane(points: Sequence[RationalPoint], h: Hyperplane) -> bool:
    w = [p for p in points if on_hyperplane(p, h)]
    return bool(w) and affine_rank(w) == h.dim - 1


def is_spanning_sphere(points: Sequence[RationalPoint], s: Sphere) -> bool:
    w = [p for p in points if on_sphere(p, s)]
    return bool(w) and affine_rank(w) == s.dim


def spanning_upper_bounds(m: int, d: int) -> Tuple[int, int]:
    """C(m, d) and C(m, d+1): the counting ceilings for spanning objects."""
    return comb(m, d), comb(m, d + 1)
