"""VC dimension, shatter functions, and the peeling edge-bound certifier."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from .errors import BudgetExceeded, GroundTooLarge, NotNondegenerate
from .incidence import BipartiteIncidenceGraph, check_beta

DEFAULT_VC_CAP = 24
DEFAULT_SHATTER_BUDGET = 2_000_000


class SetSystem:
    """A multiset of subsets of ``range(ground_size)``."""

    def __init__(self, ground_size: int, sets: Iterable[Iterable[int]]):
        if ground_size < 0:
            raise ValueError("ground size must be nonnegative")
        self.ground_size = ground_size
        self.sets: List[frozenset] = []
        for s in sets:
            s = frozenset(int(e) for e in s)
            if any(not 0 <= e < ground_size for e in s):
                raise ValueError(f"set {sorted(s)} leaves the ground set range(0, {ground_size})")
            self.sets.append(s)
        self.comments: List[str] = []

    def masks(self) -> List[int]:
        return [sum(1 << e for e in s) for s in self.sets]

    def __len__(self):
        return len(self.sets)

    def __eq__(self, other):
        return isinstance(other, SetSystem) and (self.ground_size, self.sets) == (other.ground_size, other.sets)

    def __repr__(self):
        return f"SetSystem(ground_size={self.ground_size}, sets={len(self.sets)})"


def _traces(masks: Iterable[int], b: int) -> int:
    return len({a & b for a in masks})


def vc_dimension(system: SetSystem, cap: int = DEFAULT_VC_CAP) -> int:
    """Exact VC dimension; -1 for an empty system, which shatters nothing.

    Shattered sets are grown level by level: a set can only be shattered if
    all of its one-smaller subsets are, so each level is built from the last.
    """
    if system.ground_size > cap:
        raise GroundTooLarge(f"ground size {system.ground_size} exceeds cap {cap}")
    masks = set(system.masks())
    if not masks:
        return -1
    level = {0}
    k = 0
    while True:
        nxt = set()
        for s in level:
            top = s.bit_length()
            for e in range(top, system.ground_size):
                cand = s | (1 << e)
                # every subset obtained by dropping one element must be shattered
                ok = True
                rest = cand
                while rest:
                    low = rest & -rest
                    rest ^= low
                    if low != (1 << e) and (cand ^ low) not in level:
                        ok = False
                        break
                if ok and _traces(masks, cand) == 1 << (k + 1):
                    nxt.add(cand)
        if not nxt:
            return k
        level = nxt
        k += 1


def shatter_function(system: SetSystem, z: int, budget: int = DEFAULT_SHATTER_BUDGET) -> int:
    """Max over z-subsets B of the ground set of the number of distinct traces A & B."""
    g = system.ground_size
    if not 0 <= z <= g:
        raise ValueError(f"z must lie in [0, {g}], got {z}")
    if comb(g, z) > budget:
        raise BudgetExceeded(f"C({g}, {z}) = {comb(g, z)} subsets exceed the budget {budget}")
    masks = set(system.masks())
    ceiling = min(1 << z, len(masks))
    best = 0
    for combo in combinations(range(g), z):
        b = sum(1 << e for e in combo)
        best = max(best, _traces(masks, b))
        if best == ceiling:
            break
    return best


def sauer_envelope(d: int, z: int) -> int:
    """Sum of C(z, i) for i = 0..d.  ``d = -1`` (the empty system) gives 0."""
    if d < -1 or z < 0:
        raise ValueError("need d >= -1 and z >= 0")
    return sum(comb(z, i) for i in range(0, min(d, z) + 1))


def graph_set_systems(g: BipartiteIncidenceGraph) -> Tuple[SetSystem, SetSystem]:
    """({N(q)} over P, {N(p)} over Q)."""
    left = SetSystem(g.m, g.neighbors)
    right = SetSystem(g.n, g.transpose().neighbors)
    return left, right


def left_right_vc(g: BipartiteIncidenceGraph, cap: int = DEFAULT_VC_CAP) -> Tuple[int, int]:
    left, right = graph_set_systems(g)
    return vc_dimension(left, cap), vc_dimension(right, cap)


# -- peeling ---------------------------------------------------------------------


@dataclass(frozen=True)
class PeelStep:
    q1: int
    q2: int
    setminus_size: int
    charge: Fraction


@dataclass
class PeelCertificate:
    beta: Fraction
    steps: List[PeelStep] = field(default_factory=list)
    final_vertex: int = 0
    final_degree: int = 0
    certified_bound: Fraction = Fraction(0)


def peel_certify(g: BipartiteIncidenceGraph, beta) -> PeelCertificate:
    """Instance-specific upper bound on |E(G)| by repeated peeling.

    While two vertices of Q survive, take the surviving pair with the smallest
    symmetric difference of neighborhoods (ties: lowest q, then lowest q'),
    name q1 the side with the smaller one-sided difference, and delete q1 at a
    charge of ``|N(q1) - N(q2)| / (1 - beta)``.  Nondegeneracy guarantees the
    charge covers ``|N(q1)|``; if it does not, ``NotNondegenerate`` is raised
    with the offending pair.  The last survivor contributes its degree.
    """
    beta = check_beta(beta)
    n = g.n
    if n < 1:
        raise ValueError("peeling needs at least one vertex in Q")
    deg = g.degrees()
    inter = g.intersection_matrix()
    sentinel = np.iinfo(np.int64).max
    sd = deg[:, None] + deg[None, :] - 2 * inter
    sd[np.tril_indices(n)] = sentinel  # only pairs i < j

    row_min = sd.min(axis=1)
    row_arg = sd.argmin(axis=1)
    alive = np.ones(n, dtype=bool)
    cert = PeelCertificate(beta)
    one_minus = 1 - beta
    total = Fraction(0)

    for _ in range(n - 1):
        i = int(np.argmin(row_min))  # first row attaining the minimum = lowest q
        j = int(row_arg[i])
        common = int(inter[i, j])
        a, b = int(deg[i]) - common, int(deg[j]) - common
        q1, q2, setminus = (i, j, a) if a <= b else (j, i, b)
        charge = Fraction(setminus) / one_minus
        if charge < deg[q1]:
            raise NotNondegenerate(
                f"q{q1} shares {common} of its {int(deg[q1])} neighbors with q{q2}",
                pair=(q1, q2), intersection=common, degree=int(deg[q1]),
            )
        cert.steps.append(PeelStep(q1, q2, setminus, charge))
        total += charge

        alive[q1] = False
        sd[q1, :] = sentinel
        sd[:, q1] = sentinel
        row_min[q1] = sentinel
        stale = np.flatnonzero(alive & (row_arg == q1))
        if len(stale):
            row_min[stale] = sd[stale].min(axis=1)
            row_arg[stale] = sd[stale].argmin(axis=1)

    last = int(np.flatnonzero(alive)[0])
    cert.final_vertex = last
    cert.final_degree = int(deg[last])
    cert.certified_bound = total + cert.final_degree
    return cert
