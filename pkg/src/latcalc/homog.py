"""One-sided linearization at the origin and homogeneous-part extraction.

For a lattice-polynomial expression f, the pair (c, phi) consists of the
value c = f(0) and the exact one-sided ray derivative
phi(x) = lim_{t->0+} (f(tx) - f(0)) / t, which is a lattice-linear
expression.  When c = 0, phi is the homogeneous part of f: the scaled values
f(tx)/t converge to phi(x), and the convergence can be cross-checked with
exact rational arithmetic along t = 2^-k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .expr import (
    Add, Const, Expr, Join, Meet, Mul, Neg, Scale, Var, ZERO, eval_point,
)

__all__ = [
    "Linearization", "linearize", "h_part", "RayCheckRow", "RayCheckReport",
    "numeric_h_check", "default_t_sequence",
]


def _scale(q: Fraction, e: Expr) -> Expr:
    if q == 0 or e == ZERO:
        return ZERO
    if q == 1:
        return e
    return Scale(q, e)


def _add(a: Expr, b: Expr) -> Expr:
    if a == ZERO:
        return b
    if b == ZERO:
        return a
    return Add(a, b)


@dataclass(frozen=True)
class Linearization:
    """c = f(0) and phi = one-sided ray derivative at the origin."""

    c: Fraction
    phi: Expr


def linearize(e: Expr) -> Linearization:
    """Structural recursion computing (f(0), ray derivative).

    The Join/Meet rules branch on the exact comparison of the children's
    origin values; ties keep both branches via Join/Meet of the derivatives.
    """
    if isinstance(e, Const):
        return Linearization(e.value, ZERO)
    if isinstance(e, Var):
        return Linearization(Fraction(0), e)
    if isinstance(e, Neg):
        inner = linearize(e.child)
        return Linearization(-inner.c, _scale(Fraction(-1), inner.phi))
    if isinstance(e, Scale):
        inner = linearize(e.child)
        return Linearization(e.factor * inner.c, _scale(e.factor, inner.phi))
    left = linearize(e.left)
    right = linearize(e.right)
    a, phi = left.c, left.phi
    b, gamma = right.c, right.phi
    if isinstance(e, Add):
        return Linearization(a + b, _add(phi, gamma))
    if isinstance(e, Mul):
        # product rule for (a + t*phi)(b + t*gamma): first-order term a*gamma + b*phi
        return Linearization(a * b, _add(_scale(a, gamma), _scale(b, phi)))
    if isinstance(e, Join):
        if a > b:
            return Linearization(a, phi)
        if b > a:
            return Linearization(b, gamma)
        return Linearization(a, phi if phi == gamma else Join(phi, gamma))
    if isinstance(e, Meet):
        if a < b:
            return Linearization(a, phi)
        if b < a:
            return Linearization(b, gamma)
        return Linearization(a, phi if phi == gamma else Meet(phi, gamma))
    raise TypeError(f"not an expression node: {e!r}")


def h_part(e: Expr) -> Optional[Expr]:
    """The homogeneous part of e, or None when f(0) != 0.

    When f(0) != 0 the scaled limit f(tx)/t diverges, so e has no
    homogeneous part.
    """
    lin = linearize(e)
    return lin.phi if lin.c == 0 else None


def default_t_sequence(k_max: int = 12) -> tuple[Fraction, ...]:
    """Dyadic scales 2^-1, ..., 2^-k_max (exact and cheap)."""
    return tuple(Fraction(1, 2**k) for k in range(1, k_max + 1))


@dataclass(frozen=True)
class RayCheckRow:
    t: Fraction
    max_residual: Fraction


@dataclass(frozen=True)
class RayCheckReport:
    rows: tuple[RayCheckRow, ...]
    nonincreasing: bool
    final_residual: Fraction
    tolerance: Fraction

    @property
    def passed(self) -> bool:
        return self.nonincreasing and self.final_residual <= self.tolerance


def numeric_h_check(
    e: Expr,
    directions: Sequence[Sequence[Fraction]],
    t_sequence: Optional[Sequence[Fraction]] = None,
    tolerance: Fraction = Fraction(1, 1024),
) -> RayCheckReport:
    """Exact residuals |f(tx)/t - phi(x)| along a decreasing t sequence.

    Requires f(0) = 0.  Reports the maximum residual over directions per t;
    PASS means the residual sequence is nonincreasing and ends at or below
    the tolerance.
    """
    lin = linearize(e)
    if lin.c != 0:
        raise ValueError(f"numeric_h_check requires f(0) = 0, got f(0) = {lin.c}")
    ts = tuple(Fraction(t) for t in (t_sequence or default_t_sequence()))
    if any(t <= 0 for t in ts):
        raise ValueError("t sequence entries must be positive")
    phi_values = [eval_point(lin.phi, x) for x in directions]
    rows = []
    for t in ts:
        residual = Fraction(0)
        for x, phi_x in zip(directions, phi_values):
            scaled = eval_point(e, [t * Fraction(c) for c in x]) / t
            residual = max(residual, abs(scaled - phi_x))
        rows.append(RayCheckRow(t, residual))
    nonincreasing = all(
        rows[i].max_residual >= rows[i + 1].max_residual for i in range(len(rows) - 1)
    )
    return RayCheckReport(tuple(rows), nonincreasing, rows[-1].max_residual, Fraction(tolerance))
