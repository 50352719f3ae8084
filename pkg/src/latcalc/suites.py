"""Randomized property suites over expressions and models.

Each suite runs a number of seeded trials and returns (ok, witness); they are
shared between the CLI ``suite`` command (desk-scale trial counts) and the
acceptance tests (criterion-scale trial counts).  All arithmetic is exact;
a FAIL always carries a concrete rational counterexample.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import calculus as calc
from . import homog
from .expr import (
    Add, Const, Expr, Mul, eval_point, format_expr, is_lattice_linear, max_index,
)
from .growth import d_value, growth_certificate, ideal_degree_upper
from .ideals import LatticeHom, f_norm, filtration_check, hom_contractivity_check
from .models import AlgebraModel, PointwiseModel, Vec
from .sampling import random_expr, random_point, random_rational, rng_for

__all__ = [
    "SuiteResult",
    "pointwise_oracle_suite", "compo_suite", "growth_cert_suite",
    "homog_residual_suite", "lattice_linear_h_suite", "product_h_suite",
    "ideal_norm_suite", "contractivity_suite", "filtration_suite",
    "birkhoff_random_suite", "disjointness_random_suite",
    "semantic_well_definedness_suite",
]

SuiteResult = tuple[bool, str]

_OK: SuiteResult = (True, "")


def _column(xs: Sequence[Vec], j: int) -> list[Fraction]:
    return [x[j] for x in xs]


def pointwise_oracle_suite(
    trials: int,
    seed: int,
    max_dim: int = 8,
    max_arity: int = 3,
    max_depth: int = 8,
    bound: int = 8,
) -> SuiteResult:
    """apply_calculus on a pointwise model equals coordinatewise eval_point,
    exactly, on random (expression, model, tuple) cases."""
    for trial in range(trials):
        rng = rng_for(seed, trial)
        model = PointwiseModel(rng.randint(1, max_dim))
        arity = rng.randint(1, max_arity)
        e = random_expr(rng, arity, rng.randint(0, max_depth), bound=bound)
        xs = tuple(model.sample(rng, bound) for _ in range(arity))
        via_model = calc.apply_calculus(e, calc.CalculusInstance(model, xs))
        via_scalar = tuple(
            eval_point(e, _column(xs, j)) for j in range(model.dimension)
        )
        if via_model != via_scalar:
            return False, f"trial {trial}: expr {format_expr(e)}"
    return _OK


def compo_suite(
    trials: int,
    seed: int,
    max_inner: int = 3,
    max_arity: int = 3,
    max_dim: int = 4,
    depth: int = 3,
    bound: int = 4,
) -> SuiteResult:
    """Composition law on random (g, f_1..f_m, x) triples over pointwise
    models, exact equality."""
    for trial in range(trials):
        rng = rng_for(seed, trial)
        m = rng.randint(1, max_inner)
        n = rng.randint(1, max_arity)
        model = PointwiseModel(rng.randint(1, max_dim))
        g = random_expr(rng, m, rng.randint(0, depth), bound=bound)
        fs = [random_expr(rng, n, rng.randint(0, depth), bound=bound) for _ in range(m)]
        xs = tuple(model.sample(rng, bound) for _ in range(n))
        report = calc.compo_check(g, fs, calc.CalculusInstance(model, xs))
        if not report.ok:
            return False, f"trial {trial}: g={format_expr(g)}; {report.detail}"
    return _OK


def growth_cert_suite(
    trials: int,
    seed: int,
    points_per_expr: int = 100,
    max_arity: int = 3,
    max_depth: int = 5,
    bound: int = 8,
) -> SuiteResult:
    """Certificate inequality |f(t)| <= M(1+sum|t_i|)^N and the filtration
    witness |f(t)| <= M(n+1)^N d(t)^m, both exact at sampled points."""
    for trial in range(trials):
        rng = rng_for(seed, trial)
        arity = rng.randint(1, max_arity)
        e = random_expr(rng, arity, rng.randint(0, max_depth), bound=bound)
        cert = growth_certificate(e)
        degree = ideal_degree_upper(e, arity)
        for _ in range(points_per_expr):
            t = random_point(rng, arity, bound)
            value = abs(eval_point(e, t))
            if value > cert.bound_at(t):
                return False, f"trial {trial}: certificate fails at t={t} for {format_expr(e)}"
            if value > degree.constant * d_value(t) ** degree.m:
                return False, f"trial {trial}: d^m witness fails at t={t} for {format_expr(e)}"
    return _OK


def _random_origin_zero_expr(rng, max_arity: int, max_depth: int, bound: int) -> Expr:
    e = random_expr(rng, rng.randint(1, max_arity), rng.randint(1, max_depth), bound=bound)
    c = homog.linearize(e).c
    if c != 0:
        e = Add(e, Const(-c))  # recenter so that f(0) = 0
    return e


def homog_residual_suite(
    trials: int,
    seed: int,
    directions: int = 20,
    max_arity: int = 3,
    max_depth: int = 4,
    bound: int = 2,
    direction_bound: int = 1,
    k_max: int = 12,
    tolerance: Fraction = Fraction(1, 1024),
) -> SuiteResult:
    """Exact ray residuals |f(2^-k x)/2^-k - f_h(x)| are nonincreasing in k
    and end below the tolerance.

    The residual scale is proportional to the coefficient sizes and
    direction magnitudes, so this suite draws small coefficients (|num|,
    den <= bound) and directions in the unit ball.
    """
    ts = homog.default_t_sequence(k_max)
    for trial in range(trials):
        rng = rng_for(seed, trial)
        e = _random_origin_zero_expr(rng, max_arity, max_depth, bound)
        dirs = [
            random_point(rng, max(max_index(e), 1), direction_bound)
            for _ in range(directions)
        ]
        report = homog.numeric_h_check(e, dirs, ts, tolerance)
        if not report.nonincreasing:
            return False, f"trial {trial}: residuals not monotone for {format_expr(e)}"
        if report.final_residual > tolerance:
            return False, (
                f"trial {trial}: final residual {report.final_residual} > {tolerance} "
                f"for {format_expr(e)}"
            )
    return _OK


def lattice_linear_h_suite(
    trials: int, seed: int, max_arity: int = 3, max_depth: int = 4, directions: int = 10
) -> SuiteResult:
    """For lattice-linear f: the residual is exactly 0 for every k, and
    h_part(f) is pointwise equal to f on samples."""
    from .sampling import random_lattice_linear_expr

    for trial in range(trials):
        rng = rng_for(seed, trial)
        arity = rng.randint(1, max_arity)
        e = random_lattice_linear_expr(rng, arity, rng.randint(1, max_depth))
        assert is_lattice_linear(e)
        phi = homog.h_part(e)
        if phi is None:
            return False, f"trial {trial}: no h-part for lattice-linear {format_expr(e)}"
        dirs = [random_point(rng, arity, 4) for _ in range(directions)]
        report = homog.numeric_h_check(e, dirs)
        if any(row.max_residual != 0 for row in report.rows):
            return False, f"trial {trial}: nonzero residual for {format_expr(e)}"
        for t in dirs:
            if eval_point(phi, t) != eval_point(e, t):
                return False, f"trial {trial}: h_part differs from f at {t}"
    return _OK


def product_h_suite(
    trials: int, seed: int, max_arity: int = 3, max_depth: int = 3, points: int = 10
) -> SuiteResult:
    """h_part of a product of two origin-zero expressions evaluates to 0."""
    for trial in range(trials):
        rng = rng_for(seed, trial)
        e1 = _random_origin_zero_expr(rng, max_arity, max_depth, bound=4)
        e2 = _random_origin_zero_expr(rng, max_arity, max_depth, bound=4)
        phi = homog.h_part(Mul(e1, e2))
        if phi is None:
            return False, f"trial {trial}: product lost its h-part"
        arity = max(max_index(e1), max_index(e2), 1)
        for _ in range(points):
            t = random_point(rng, arity, 4)
            if eval_point(phi, t) != 0:
                return False, f"trial {trial}: product h-part nonzero at {t}"
    return _OK


def _positive_element(model: PointwiseModel, rng, bound: int) -> Vec:
    return model.abs(model.sample(rng, bound))


def _ideal_member(model: PointwiseModel, e: Vec, rng, bound: int) -> Vec:
    # e * (random) is always in I_e and vanishes wherever e does.
    return model.mul(e, model.sample(rng, bound))


def ideal_norm_suite(
    trials: int, seed: int, max_dim: int = 6, bound: int = 8
) -> SuiteResult:
    """Norm axioms of ||.||_e on I_e: triangle inequality, absolute
    homogeneity, definiteness for strictly positive e, the Riesz property,
    and sharpness of the defining inequality."""
    for trial in range(trials):
        rng = rng_for(seed, trial)
        model = PointwiseModel(rng.randint(1, max_dim))
        e = _positive_element(model, rng, bound)
        x = _ideal_member(model, e, rng, bound)
        y = _ideal_member(model, e, rng, bound)
        nx = f_norm(x, e, model).value
        ny = f_norm(y, e, model).value
        nsum = f_norm(model.add(x, y), e, model).value
        if nsum > nx + ny:
            return False, f"trial {trial}: triangle inequality fails"
        q = random_rational(rng, bound)
        if f_norm(model.scale(q, x), e, model).value != abs(q) * nx:
            return False, f"trial {trial}: homogeneity fails"
        # Riesz property: |x'| <= |y| forces ||x'|| <= ||y||.
        signs = tuple(Fraction(rng.choice((-1, 1))) for _ in range(model.dimension))
        xr = tuple(s * min(a, b) for s, a, b in zip(signs, model.abs(x), model.abs(y)))
        if f_norm(xr, e, model).value > ny:
            return False, f"trial {trial}: Riesz property fails"
        # Definiteness needs strictly positive e.
        e_strict = model.add(e, model.identity)
        if f_norm(x, e_strict, model).value == 0 and x != model.zero():
            return False, f"trial {trial}: definiteness fails"
        # Sharpness: lambda works, lambda - eps does not (when lambda > 0).
        lam = f_norm(x, e, model).value
        if not model.leq(model.abs(x), model.scale(lam, e)):
            return False, f"trial {trial}: defining inequality fails"
        if lam > 0:
            eps = lam / rng.randint(2, 16)
            if model.leq(model.abs(x), model.scale(lam - eps, e)):
                return False, f"trial {trial}: norm is not the infimum"
    return _OK


def contractivity_suite(
    trials: int, seed: int, max_dim: int = 6, bound: int = 8
) -> SuiteResult:
    """Lattice homomorphisms are contractive between ideal norms."""
    for trial in range(trials):
        rng = rng_for(seed, trial)
        source = PointwiseModel(rng.randint(1, max_dim))
        target_dim = rng.randint(1, max_dim)
        assignment = tuple(rng.randint(1, source.dimension) for _ in range(target_dim))
        weights = None
        if rng.random() < 0.5:
            weights = tuple(
                abs(random_rational(rng, bound)) + 1 for _ in range(target_dim)
            )
        hom = LatticeHom(source, PointwiseModel(target_dim), assignment, weights)
        e = _positive_element(source, rng, bound)
        xs = [_ideal_member(source, e, rng, bound) for _ in range(3)]
        report = hom_contractivity_check(hom, e, xs)
        if not report.ok:
            return False, f"trial {trial}: {report.detail}"
    return _OK


def filtration_suite(
    trials: int, seed: int, max_dim: int = 6, m_max: int = 4, bound: int = 4
) -> SuiteResult:
    """For e >= identity the powers increase and the norms ||x||_{e^m} are
    nonincreasing in m."""
    for trial in range(trials):
        rng = rng_for(seed, trial)
        model = PointwiseModel(rng.randint(1, max_dim))
        e = model.add(_positive_element(model, rng, bound), model.identity)
        xs = [_ideal_member(model, e, rng, bound) for _ in range(3)]
        report = filtration_check(e, model, xs, m_max)
        if not report.ok:
            return False, f"trial {trial}: {report.detail}"
    return _OK


def birkhoff_random_suite(model: AlgebraModel, trials: int, seed: int, bound: int = 8) -> SuiteResult:
    for trial in range(trials):
        rng = rng_for(seed, trial)
        x1, x2 = model.sample(rng, bound), model.sample(rng, bound)
        report = calc.birkhoff_check(model, x1, x2)
        if not report.ok:
            witness = f"x1={model.format_element(x1)} x2={model.format_element(x2)}"
            return False, f"trial {trial}: {witness}; {report.detail}"
    return _OK


def disjointness_random_suite(model: AlgebraModel, trials: int, seed: int, bound: int = 8) -> SuiteResult:
    """(x3*x1) ^ x2 = 0 for random positive disjoint pairs x1 = x^+,
    x2 = x^- and random positive x3."""
    for trial in range(trials):
        rng = rng_for(seed, trial)
        x = model.sample(rng, bound)
        x1 = model.pos_part(x)
        x2 = model.pos_part(model.neg(x))
        x3 = model.abs(model.sample(rng, bound))
        report = calc.disjointness_mult_check(model, x1, x2, x3)
        if not report.ok:
            return False, f"trial {trial}: {report.detail}"
    return _OK


def semantic_well_definedness_suite(
    trials: int, seed: int, max_arity: int = 2, depth: int = 3
) -> SuiteResult:
    """If two expressions agree on the sample budget, their calculus values
    agree on pointwise instances built from sampled points."""
    from .expr import semantic_eq
    from .sampling import SamplingPlan

    for trial in range(trials):
        rng = rng_for(seed, trial)
        arity = rng.randint(1, max_arity)
        e1 = random_expr(rng, arity, rng.randint(0, depth), bound=4)
        # A pointwise-equal rewrite: e2 = max(e1, e1) + 0-scale noise.
        from .expr import Join, Scale, Add as EAdd

        e2 = EAdd(Join(e1, e1), Scale(Fraction(0), random_expr(rng, arity, 2, bound=4)))
        plan = SamplingPlan(seed=rng_for(seed, trial, 1).randint(0, 2**31))
        if not semantic_eq(e1, e2, plan.points(arity)):
            return False, f"trial {trial}: rewrite not pointwise equal"
        points = [random_point(rng, arity, 4) for _ in range(4)]
        model = PointwiseModel(len(points))
        xs = tuple(
            tuple(p[i] for p in points) for i in range(arity)
        )
        inst = calc.CalculusInstance(model, xs)
        if calc.apply_calculus(e1, inst) != calc.apply_calculus(e2, inst):
            return False, f"trial {trial}: calculus values differ"
    return _OK
