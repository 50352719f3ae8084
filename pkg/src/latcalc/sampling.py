"""Deterministic seeded sampling of rationals, points and expressions.

Everything here is driven by explicit seeds so that any run can be
reproduced bit-for-bit.  Per-trial randomness is derived from
(seed, trial index) so trials may be evaluated in any order.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .expr import Add, Const, Expr, Join, Meet, Mul, Neg, Scale, Var

__all__ = [
    "derive_seed", "rng_for", "random_rational", "random_point",
    "SamplingPlan", "DEFAULT_GRID", "grid_points", "cube_boundary_points",
    "random_expr", "random_lattice_linear_expr",
]

# Default deterministic grid values: small rationals exercising ties and signs.
DEFAULT_GRID: tuple[Fraction, ...] = tuple(
    Fraction(v) for v in ("-2", "-1", "-1/2", "0", "1/2", "1", "2")
)

_MIX = 0x9E3779B97F4A7C15  # 64-bit golden-ratio constant for seed mixing


def derive_seed(seed: int, *indices: int) -> int:
    """Deterministically derive a child seed from a base seed and indices."""
    h = seed & 0xFFFFFFFFFFFFFFFF
    for i in indices:
        h ^= (i + _MIX + (h << 6) + (h >> 2)) & 0xFFFFFFFFFFFFFFFF
        h &= 0xFFFFFFFFFFFFFFFF
    return h


def rng_for(seed: int, *indices: int) -> random.Random:
    return random.Random(derive_seed(seed, *indices))


def random_rational(rng: random.Random, bound: int = 8) -> Fraction:
    """Rational with numerator in [-bound, bound] and denominator in [1, bound]."""
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_point(rng: random.Random, arity: int, bound: int = 8) -> tuple[Fraction, ...]:
    return tuple(random_rational(rng, bound) for _ in range(arity))


def grid_points(
    arity: int,
    values: Sequence[Fraction] = DEFAULT_GRID,
    cap: int = 4096,
    seed: int = 0,
) -> Iterator[tuple[Fraction, ...]]:
    """Deterministic grid over the given axis values.

    The full cartesian product is used when it has at most ``cap`` points;
    otherwise a seeded sample of ``cap`` grid nodes is drawn.
    """
    if arity == 0:
        yield ()
        return
    total = len(values) ** arity
    if total <= cap:
        yield from itertools.product(values, repeat=arity)
        return
    rng = rng_for(seed, arity)
    for _ in range(cap):
        yield tuple(rng.choice(values) for _ in range(arity))


def cube_boundary_points(
    arity: int, step: Fraction = Fraction(1, 8)
) -> Iterator[tuple[Fraction, ...]]:
    """Grid points on the boundary of [-1,1]^arity (sup-norm exactly 1)."""
    ticks = []
    t = Fraction(-1)
    while t <= 1:
        ticks.append(t)
        t += step
    for p in itertools.product(ticks, repeat=arity):
        if any(abs(c) == 1 for c in p):
            yield p


@dataclass(frozen=True)
class SamplingPlan:
    """Budget for sampling-based checks: a deterministic grid plus seeded
    random rational points."""

    grid_values: tuple[Fraction, ...] = DEFAULT_GRID
    grid_cap: int = 4096
    random_points: int = 64
    seed: int = 0
    bound: int = 8
    extra_points: tuple[tuple[Fraction, ...], ...] = ()

    def points(self, arity: int) -> Iterator[tuple[Fraction, ...]]:
        yield from self.extra_points
        yield from grid_points(arity, self.grid_values, self.grid_cap, self.seed)
        rng = rng_for(self.seed, 1)
        for _ in range(self.random_points):
            yield random_point(rng, arity, self.bound)


def random_expr(
    rng: random.Random,
    arity: int,
    depth: int,
    bound: int = 8,
    allow_mul: bool = True,
    allow_const: bool = True,
) -> Expr:
    """Random expression tree of depth at most ``depth``."""
    if depth <= 0:
        choices = ["var"]
        if allow_const:
            choices.append("const")
        kind = rng.choice(choices)
        if kind == "const":
            return Const(random_rational(rng, bound))
        return Var(rng.randint(1, arity))
    kinds = ["add", "join", "meet", "neg", "scale", "leaf", "leaf"]
    if allow_mul:
        kinds.append("mul")
    kind = rng.choice(kinds)
    if kind == "leaf":
        return random_expr(rng, arity, 0, bound, allow_mul, allow_const)
    if kind == "neg":
        return Neg(random_expr(rng, arity, depth - 1, bound, allow_mul, allow_const))
    if kind == "scale":
        return Scale(
            random_rational(rng, bound),
            random_expr(rng, arity, depth - 1, bound, allow_mul, allow_const),
        )
    left = random_expr(rng, arity, depth - 1, bound, allow_mul, allow_const)
    right = random_expr(rng, arity, depth - 1, bound, allow_mul, allow_const)
    node = {"add": Add, "join": Join, "meet": Meet, "mul": Mul}[kind]
    return node(left, right)


def random_lattice_linear_expr(
    rng: random.Random, arity: int, depth: int, bound: int = 8
) -> Expr:
    """Random positively homogeneous expression (no products, no constants)."""
    return random_expr(rng, arity, depth, bound, allow_mul=False, allow_const=False)
