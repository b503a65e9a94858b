"""Closed-form incidence bounds, evaluated with epsilon = 0 and constant 1.

Each bound is a sum of monomials ``m^a n^b`` with rational exponents.  Values
are Decimals carrying ``DIGITS`` significant digits, computed at a higher
working precision and then rounded upward, so a reported bound never falls
below the true value of the formula.
"""
from __future__ import annotations

import decimal
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction as F
from math import lcm
from typing import List, Optional, Tuple

from .errors import MissingParams

DIGITS = 60
WORK_DIGITS = 90

KINDS = (
    "elekes_toth",
    "lifting",
    "apfelbaum_sharir",
    "projected_sphere",
    "vc",
    "semi_algebraic",
    "r4_spheres",
    "simtri_r4",
)
_NEEDS_D = {"elekes_toth": 2, "lifting": 1, "vc": 1, "semi_algebraic": 1}  # kind -> minimum d

CSV_HEADER = "kind,m,n,measured,bound,ratio"


@dataclass(frozen=True)
class BoundFormula:
    """``d`` is the ambient dimension (elekes_toth, lifting), the left VC
    dimension (vc) or the dimension d2 of the Q side (semi_algebraic)."""

    kind: str
    d: Optional[int] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise MissingParams(f"unknown bound kind {self.kind!r}; choose from {', '.join(KINDS)}")
        need = _NEEDS_D.get(self.kind)
        if need is not None:
            if self.d is None:
                raise MissingParams(f"kind {self.kind} needs the parameter d")
            if self.d < need:
                raise MissingParams(f"kind {self.kind} needs d >= {need}, got {self.d}")

    def terms(self) -> List[Tuple[F, F]]:
        """Exponent pairs (a, b) of the monomials m^a n^b, in formula order."""
        d = self.d
        k = self.kind
        if k == "elekes_toth":
            return [(F(d, d + 1), F(d, d + 1)), (F(1), 1 - F(1, d - 1))]
        if k == "lifting":
            return [(F(d + 1, d + 2), F(d + 1, d + 2)), (F(1), 1 - F(1, d))]
        if k == "apfelbaum_sharir":
            return [(F(8, 11), F(9, 11)), (F(1), F(1, 2))]
        if k == "projected_sphere":
            return [(F(8, 11), F(9, 11)), (F(1), F(1, 2)), (F(0), F(1))]
        if k in ("vc", "semi_algebraic"):
            return [(F(1), 1 - F(1, d)), (F(0), F(1))]
        if k == "r4_spheres":
            return [(F(15, 19), F(16, 19)), (F(1), F(2, 3)), (F(0), F(1))]
        return [(F(0), F(26, 11))]  # simtri_r4: n^{2 + 4/11}


def _check_mn(formula: BoundFormula, m: int, n: int):
    if n < 1:
        raise MissingParams("n must be at least 1")
    if formula.kind != "simtri_r4" and (m is None or m < 1):
        raise MissingParams("m must be at least 1")


def _monomial(m: int, n: int, a: F, b: F, ctx: decimal.Context) -> Decimal:
    if a == 0 and b == 0:
        return Decimal(1)
    log = Decimal(0)
    if a:
        log = ctx.add(log, ctx.multiply(ctx.divide(Decimal(a.numerator), Decimal(a.denominator)), ctx.ln(Decimal(m))))
    if b:
        log = ctx.add(log, ctx.multiply(ctx.divide(Decimal(b.numerator), Decimal(b.denominator)), ctx.ln(Decimal(n))))
    return ctx.exp(log)


def term_values(formula: BoundFormula, m: int, n: int) -> List[Decimal]:
    _check_mn(formula, m, n)
    ctx = decimal.Context(prec=WORK_DIGITS)
    m = 1 if m is None else m
    return [_monomial(m, n, a, b, ctx) for a, b in formula.terms()]


def evaluate(formula: BoundFormula, m: int, n: int) -> Decimal:
    """Sum of the formula's monomials, rounded up to ``DIGITS`` digits."""
    ctx = decimal.Context(prec=WORK_DIGITS)
    total = Decimal(0)
    for t in term_values(formula, m, n):
        total = ctx.add(total, t)
    return decimal.Context(prec=DIGITS, rounding=decimal.ROUND_CEILING).plus(total)


def _monomial_ge(m: int, n: int, x: Tuple[F, F], y: Tuple[F, F]) -> bool:
    """Exactly decide m^{x0} n^{x1} >= m^{y0} n^{y1}."""
    da, db = x[0] - y[0], x[1] - y[1]
    den = lcm(da.denominator, db.denominator)
    ea, eb = int(da * den), int(db * den)
    lhs = m ** max(ea, 0) * n ** max(eb, 0)
    rhs = m ** max(-ea, 0) * n ** max(-eb, 0)
    return lhs >= rhs


def dominant_term(formula: BoundFormula, m: int, n: int) -> int:
    """Index of the largest monomial; ties go to the earlier term.

    Decided by exact integer comparison, not by the rounded values.
    """
    _check_mn(formula, m, n)
    m = 1 if m is None else m
    terms = formula.terms()
    best = 0
    for i in range(1, len(terms)):
        if not _monomial_ge(m, n, terms[best], terms[i]):
            best = i
    return best


@dataclass(frozen=True)
class RatioReport:
    kind: str
    m: int
    n: int
    measured: int
    bound_value: Decimal
    ratio: Decimal

    def csv_row(self) -> str:
        return f"{self.kind},{self.m},{self.n},{self.measured},{self.bound_value},{self.ratio}"


def ratio_report(measured: int, formula: BoundFormula, m: int, n: int) -> RatioReport:
    if measured < 0:
        raise ValueError("measured count must be nonnegative")
    bound = evaluate(formula, m, n)
    ctx = decimal.Context(prec=DIGITS, rounding=decimal.ROUND_CEILING)
    ratio = ctx.divide(Decimal(measured), bound) if measured else Decimal(0)
    return RatioReport(formula.kind, m, n, measured, bound, ratio)
