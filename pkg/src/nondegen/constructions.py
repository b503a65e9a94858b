"""Seeded generators: the dense random nondegenerate graph, point clouds,
rational points on spheres, sphere families and degenerate clusters.

Randomness contract: every decision site draws from its own named substream,
``PCG64(SeedSequence(seed, spawn_key=(key(name),)))`` where ``key`` is the
first 8 bytes (little endian) of SHA-256 of the name.  Outputs are a pure
function of (parameters, seed).
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import Exhausted, InfeasibleDedup, InfeasibleParameters, UnrepresentableRadius
from .geometry import RationalPoint, Sphere, affine_rank, circumsphere, dot, on_sphere, to_rational
from .incidence import BipartiteIncidenceGraph, check_beta, check_nondegenerate

SEED_LIMIT = 1 << 64


def substream(seed: int, name: str) -> np.random.Generator:
    if not 0 <= seed < SEED_LIMIT:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    key = int.from_bytes(hashlib.sha256(name.encode("ascii")).digest()[:8], "little")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(key,))))


def bernoulli_threshold(rho: Fraction) -> int:
    """floor(rho * 2**64): a raw 64-bit draw below it is a success.

    The bias against an exact Bernoulli(rho) is under 2**-64.
    """
    return (rho.numerator << 64) // rho.denominator


@dataclass
class ConstructionOutcome:
    graph: BipartiteIncidenceGraph
    beta: Fraction
    rho: Fraction
    min_degree: int
    max_pair_intersection: int
    nondegenerate: bool
    passed: bool


def thm1_random_graph(m: int, n: int, beta, seed: int) -> ConstructionOutcome:
    """Random bipartite graph with edge probability rho = beta/3.

    ``passed`` reports whether the sample is beta-nondegenerate and has at
    least ``beta/6 * m * n`` edges.  Failures are reported, never retried.
    """
    beta = check_beta(beta)
    if m < 1 or n < 1:
        raise InfeasibleParameters("need m, n >= 1")
    rho = beta / 3
    rng = substream(seed, "thm1.edges")
    raw = rng.bit_generator.random_raw(m * n).reshape(n, m)
    hit = raw < np.uint64(bernoulli_threshold(rho))
    g = BipartiteIncidenceGraph(m, [np.flatnonzero(row).tolist() for row in hit])

    deg = g.degrees()
    if n >= 2:
        inter = g.intersection_matrix()
        np.fill_diagonal(inter, 0)
        max_pair = int(inter.max())
    else:
        max_pair = 0
    nondeg = check_nondegenerate(g, beta, max_witnesses=1).verdict
    dense = 6 * g.edge_count * beta.denominator >= beta.numerator * m * n
    return ConstructionOutcome(g, beta, rho, int(deg.min()), max_pair, nondeg, nondeg and dense)


def gen_random_points(count: int, dim: int, coord_bound: int, seed: int) -> List[RationalPoint]:
    """Distinct integer points drawn uniformly from [-bound, bound]^dim."""
    if count < 1 or dim < 1 or coord_bound < 0:
        raise InfeasibleParameters("need count >= 1, dim >= 1, coord_bound >= 0")
    if count > (2 * coord_bound + 1) ** dim:
        raise InfeasibleDedup(f"only {(2 * coord_bound + 1) ** dim} lattice points available for {count}")
    rng = substream(seed, "points.lattice")
    seen = set()
    out = []
    while len(out) < count:
        batch = rng.integers(-coord_bound, coord_bound, size=(count, dim), endpoint=True)
        for row in batch.tolist():
            p = tuple(Fraction(v) for v in row)
            if p not in seen:
                seen.add(p)
                out.append(p)
                if len(out) == count:
                    break
    return out


def inverse_stereographic(t: Sequence) -> RationalPoint:
    """Map t in Q^{d-1} to the unit sphere in R^d, projecting from the north pole.

    ``t = 0`` goes to the south pole ``(0, ..., 0, -1)``.
    """
    t = [to_rational(x) for x in t]
    s = dot(t, t)
    return tuple(2 * x / (s + 1) for x in t) + ((s - 1) / (s + 1),)


def rational_sqrt(x: Fraction) -> Optional[Fraction]:
    x = to_rational(x)
    if x < 0:
        return None
    a, b = isqrt(x.numerator), isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def _random_params(rng: np.random.Generator, k: int, bound: int) -> List[Fraction]:
    nums = rng.integers(-bound, bound, size=k, endpoint=True)
    dens = rng.integers(1, bound, size=k, endpoint=True)
    return [Fraction(int(a), int(b)) for a, b in zip(nums, dens)]


def gen_points_on_sphere(
    count: int,
    dim: int,
    seed: int,
    sphere: Optional[Sphere] = None,
    param_bound: int = 8,
    stream: str = "onsphere.params",
) -> List[RationalPoint]:
    """Distinct rational points exactly on ``sphere`` (default: unit, at origin).

    Points are inverse stereographic images of random rational parameters,
    then scaled by the radius, which must itself be rational.
    """
    if dim < 2 or count < 1:
        raise InfeasibleParameters("need dim >= 2 and count >= 1")
    if sphere is None:
        center, radius = (Fraction(0),) * dim, Fraction(1)
    else:
        if sphere.dim != dim:
            raise InfeasibleParameters(f"sphere lives in R^{sphere.dim}, not R^{dim}")
        radius = rational_sqrt(sphere.sq_radius)
        if radius is None:
            raise UnrepresentableRadius(f"squared radius {sphere.sq_radius} is not a rational square")
        center = sphere.center
    rng = substream(seed, stream)
    seen = set()
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 100 * count + 1000:
            raise Exhausted(f"could not find {count} distinct points with parameter bound {param_bound}")
        u = inverse_stereographic(_random_params(rng, dim - 1, param_bound))
        p = tuple(c + radius * x for c, x in zip(center, u))
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def gen_sphere_family(points: Sequence[RationalPoint], k: int, seed: int, max_attempts: Optional[int] = None) -> List[Sphere]:
    """k distinct circumspheres of random affinely independent (d+1)-subsets."""
    points = list(points)
    if not points:
        raise InfeasibleParameters("no points")
    d = len(points[0])
    if len(points) < d + 1:
        raise InfeasibleParameters(f"need at least {d + 1} points in R^{d}")
    if affine_rank(points) < d:
        raise Exhausted("points lie in a hyperplane, so no sphere passes through d+1 of them")
    rng = substream(seed, "spheres.subsets")
    budget = max_attempts if max_attempts is not None else 50 * k + 200
    seen = set()
    out = []
    for _ in range(budget):
        if len(out) == k:
            break
        idx = sorted(rng.choice(len(points), size=d + 1, replace=False).tolist())
        pts = [points[i] for i in idx]
        if affine_rank(pts) < d:
            continue
        s = circumsphere(pts)
        if s not in seen:
            seen.add(s)
            out.append(s)
    if len(out) < k:
        raise Exhausted(f"found only {len(out)} of {k} distinct spheres in {budget} attempts")
    return out


def gen_degenerate_cluster(dim: int, circle_count: int, off_count: int, seed: int) -> Tuple[List[RationalPoint], Sphere]:
    """Points on the unit sphere of R^dim, ``circle_count`` of them on the
    equatorial section ``x_dim = 0`` and ``off_count`` off it.

    For dim = 3 the section is a circle; in general it is a (dim-2)-sphere, a
    proper subsphere, so the sphere is degenerate for every
    ``beta <= circle_count / (circle_count + off_count)``.
    """
    if dim < 3 or circle_count < 3 or off_count < 0:
        raise InfeasibleParameters("need dim >= 3, circle_count >= 3, off_count >= 0")
    sphere = Sphere((Fraction(0),) * dim, Fraction(1))
    ring = gen_points_on_sphere(circle_count, dim - 1, seed, stream="cluster.ring")
    ring = [p + (Fraction(0),) for p in ring]
    rng = substream(seed, "cluster.off")
    seen = set(ring)
    off = []
    attempts = 0
    while len(off) < off_count:
        attempts += 1
        if attempts > 100 * off_count + 1000:
            raise Exhausted("could not place the off-section points")
        p = inverse_stereographic(_random_params(rng, dim - 1, 8))
        if p[-1] != 0 and p not in seen:
            seen.add(p)
            off.append(p)
    pts = ring + off
    assert all(on_sphere(p, sphere) for p in pts)
    return pts, sphere
