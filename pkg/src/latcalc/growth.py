"""Polynomial-growth certificates and certified sup-norm bounds on boxes.

A growth certificate (M, N) for an expression f asserts
|f(t)| <= M * (1 + sum_i |t_i|)^N for every point t; it is produced by
structural recursion and is sound by construction.  The filtration degree
bounds f by a power of d = max(1, |t_1|, ..., |t_n|).  Sup norms over boxes
are bracketed by interval branch-and-bound with exact rational interval
arithmetic.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .expr import (
    Add, Const, Expr, Join, Meet, Mul, Neg, Scale, Var, eval_point, max_index,
)

__all__ = [
    "GrowthCert", "growth_certificate", "IdealDegree", "ideal_degree_upper",
    "Interval", "Box", "box_from_bounds", "interval_eval", "SupBoundResult",
    "box_sup_bound", "dm_norm_lower", "d_value", "lipschitz_bound",
    "DEFAULT_NODE_BUDGET",
]

DEFAULT_NODE_BUDGET = 100_000


@dataclass(frozen=True)
class GrowthCert:
    """Certificate |f(t)| <= M * (1 + sum|t_i|)^N."""

    M: Fraction
    N: int

    def bound_at(self, point: Sequence[Fraction]) -> Fraction:
        base = 1 + sum(abs(Fraction(c)) for c in point)
        return self.M * base**self.N


def growth_certificate(e: Expr) -> GrowthCert:
    """Structural growth certificate; sound but not necessarily minimal."""
    if isinstance(e, Const):
        return GrowthCert(abs(e.value), 0)
    if isinstance(e, Var):
        return GrowthCert(Fraction(1), 1)
    if isinstance(e, Neg):
        return growth_certificate(e.child)
    if isinstance(e, Scale):
        c = growth_certificate(e.child)
        return GrowthCert(abs(e.factor) * c.M, c.N)
    left = growth_certificate(e.left)
    right = growth_certificate(e.right)
    if isinstance(e, Add):
        return GrowthCert(left.M + right.M, max(left.N, right.N))
    if isinstance(e, Mul):
        return GrowthCert(left.M * right.M, left.N + right.N)
    if isinstance(e, (Join, Meet)):
        return GrowthCert(max(left.M, right.M), max(left.N, right.N))
    raise TypeError(f"not an expression node: {e!r}")


def d_value(point: Sequence[Fraction]) -> Fraction:
    """d(t) = max(1, |t_1|, ..., |t_n|)."""
    return max(Fraction(1), *(abs(Fraction(c)) for c in point)) if point else Fraction(1)


@dataclass(frozen=True)
class IdealDegree:
    """Membership witness f in I_{d^m}: |f| <= constant * d^m pointwise."""

    m: int
    constant: Fraction


def ideal_degree_upper(e: Expr, arity: Optional[int] = None) -> IdealDegree:
    """Upper bound on the filtration degree of e.

    Uses 1 + sum|t_i| <= (n+1) * d(t), so (M, N) certifies
    |f| <= M*(n+1)^N * d^N.
    """
    if arity is None:
        arity = max_index(e)
    cert = growth_certificate(e)
    return IdealDegree(cert.N, cert.M * Fraction(arity + 1) ** cert.N)


# ---------------------------------------------------------------------------
# Interval arithmetic
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    def __contains__(self, value: Fraction) -> bool:
        return self.lo <= value <= self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def magnitude(self) -> Fraction:
        """max |x| over the interval."""
        return max(abs(self.lo), abs(self.hi))

    def add(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def neg(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def scale(self, q: Fraction) -> "Interval":
        if q >= 0:
            return Interval(q * self.lo, q * self.hi)
        return Interval(q * self.hi, q * self.lo)

    def mul(self, other: "Interval") -> "Interval":
        products = [
            self.lo * other.lo, self.lo * other.hi,
            self.hi * other.lo, self.hi * other.hi,
        ]
        return Interval(min(products), max(products))

    def join(self, other: "Interval") -> "Interval":
        return Interval(max(self.lo, other.lo), max(self.hi, other.hi))

    def meet(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), min(self.hi, other.hi))


Box = tuple[Interval, ...]


def box_from_bounds(bounds: Iterable[tuple[Fraction, Fraction]]) -> Box:
    return tuple(Interval(lo, hi) for lo, hi in bounds)


def interval_eval(e: Expr, box: Box) -> Interval:
    """Inclusion-monotone interval extension of the expression tree."""
    if isinstance(e, Const):
        return Interval(e.value, e.value)
    if isinstance(e, Var):
        if e.index > len(box):
            raise ValueError(f"expression uses x{e.index} but box has arity {len(box)}")
        return box[e.index - 1]
    if isinstance(e, Neg):
        return interval_eval(e.child, box).neg()
    if isinstance(e, Scale):
        return interval_eval(e.child, box).scale(e.factor)
    left = interval_eval(e.left, box)
    right = interval_eval(e.right, box)
    if isinstance(e, Add):
        return left.add(right)
    if isinstance(e, Mul):
        return left.mul(right)
    if isinstance(e, Join):
        return left.join(right)
    if isinstance(e, Meet):
        return left.meet(right)
    raise TypeError(f"not an expression node: {e!r}")


@dataclass(frozen=True)
class SupBoundResult:
    """Bracket lower <= sup_B |e| <= upper; lower is attained at witness."""

    lower: Fraction
    upper: Fraction
    witness: tuple[Fraction, ...]
    nodes: int
    budget_exhausted: bool = False

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower


def _split(box: Box) -> tuple[Box, Box]:
    # Bisect the widest coordinate at its midpoint; ties go to lowest index.
    widths = [iv.width for iv in box]
    idx = widths.index(max(widths))
    iv = box[idx]
    mid = iv.midpoint
    left = box[:idx] + (Interval(iv.lo, mid),) + box[idx + 1 :]
    right = box[:idx] + (Interval(mid, iv.hi),) + box[idx + 1 :]
    return left, right


def box_sup_bound(
    e: Expr,
    box: Box,
    tol: Fraction,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> SupBoundResult:
    """Bracket sup over the box of |e| by branch-and-bound.

    Boxes whose enclosure cannot beat the incumbent sample value are pruned;
    the returned upper bound always dominates every pruned or active box.
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not box:
        raise ValueError("box must be nonempty")

    def sample(point: tuple[Fraction, ...]) -> Fraction:
        return abs(eval_point(e, point))

    midpoint = tuple(iv.midpoint for iv in box)
    lower = sample(midpoint)
    witness = midpoint
    for corner in (tuple(iv.lo for iv in box), tuple(iv.hi for iv in box)):
        v = sample(corner)
        if v > lower:
            lower, witness = v, corner

    counter = 0
    heap: list[tuple[Fraction, int, Box]] = []
    root_upper = interval_eval(e, box).magnitude
    heapq.heappush(heap, (-root_upper, counter, box))
    nodes = 0
    upper = root_upper
    while heap:
        neg_upper, _, current = heapq.heappop(heap)
        upper = -neg_upper
        if upper <= lower:
            upper = lower
            break
        if upper - lower <= tol:
            return SupBoundResult(lower, upper, witness, nodes)
        nodes += 1
        if nodes > node_budget:
            return SupBoundResult(lower, upper, witness, nodes, budget_exhausted=True)
        for child in _split(current):
            mid = tuple(iv.midpoint for iv in child)
            v = sample(mid)
            if v > lower:
                lower, witness = v, mid
            child_upper = interval_eval(e, child).magnitude
            if child_upper > lower:
                counter += 1
                heapq.heappush(heap, (-child_upper, counter, child))
    else:
        # Heap drained: every region was pruned at or below the incumbent,
        # so the sampled maximum is the exact supremum.
        upper = lower
    return SupBoundResult(lower, upper, witness, nodes)


def dm_norm_lower(
    e: Expr,
    m: int,
    points: "Iterable[Sequence[Fraction]]",
) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Certified lower bound for the filtration norm ||e||_{d^m}.

    Exact maximum of |e(t)| / d(t)^m over the supplied sample sweep.
    """
    best = Fraction(0)
    best_point: tuple[Fraction, ...] = ()
    seen = False
    for t in points:
        t = tuple(Fraction(c) for c in t)
        value = abs(eval_point(e, t)) / d_value(t) ** m
        if not seen or value > best:
            best, best_point, seen = value, t, True
    if not seen:
        raise ValueError("empty sample sweep")
    return best, best_point


def lipschitz_bound(e: Expr) -> Fraction:
    """Lipschitz constant bound w.r.t. the sup norm, for product-free trees."""
    if isinstance(e, Const):
        return Fraction(0)
    if isinstance(e, Var):
        return Fraction(1)
    if isinstance(e, Neg):
        return lipschitz_bound(e.child)
    if isinstance(e, Scale):
        return abs(e.factor) * lipschitz_bound(e.child)
    if isinstance(e, Mul):
        raise ValueError("lipschitz_bound supports product-free expressions only")
    left = lipschitz_bound(e.left)
    right = lipschitz_bound(e.right)
    if isinstance(e, Add):
        return left + right
    return max(left, right)  # Join / Meet
