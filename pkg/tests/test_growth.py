"""Growth certificates, interval arithmetic, certified box sup bounds."""

from fractions import Fraction

import pytest

from latcalc.expr import eval_point, parse
from latcalc.growth import (
    Interval, box_from_bounds, box_sup_bound, d_value, dm_norm_lower,
    growth_certificate, ideal_degree_upper, interval_eval, lipschitz_bound,
)
from latcalc.sampling import cube_boundary_points, random_expr, random_point, rng_for

F = Fraction


@pytest.mark.parametrize(
    "text, M, N",
    [
        ("x1*x2", 1, 2),
        ("abs(x1) + 1", 2, 1),
        ("3*x1", 3, 1),
        ("max(x1, x2*x2)", 1, 2),
        ("1/2", F(1, 2), 0),
    ],
)
def test_growth_certificate_frozen(text, M, N):
    cert = growth_certificate(parse(text))
    assert (cert.M, cert.N) == (F(M), N)


def test_growth_certificate_sound_on_random_samples():
    for trial in range(300):
        rng = rng_for(11, trial)
        arity = rng.randint(1, 3)
        e = random_expr(rng, arity, rng.randint(0, 5))
        cert = growth_certificate(e)
        for _ in range(10):
            t = random_point(rng, arity)
            assert abs(eval_point(e, t)) <= cert.bound_at(t)


def test_ideal_degree_upper_frozen():
    degree = ideal_degree_upper(parse("x1*x1 + 1"), arity=1)
    assert (degree.m, degree.constant) == (2, F(8))


def test_ideal_degree_witness_holds():
    for trial in range(200):
        rng = rng_for(12, trial)
        arity = rng.randint(1, 3)
        e = random_expr(rng, arity, rng.randint(0, 5))
        degree = ideal_degree_upper(e, arity)
        for _ in range(10):
            t = random_point(rng, arity)
            assert abs(eval_point(e, t)) <= degree.constant * d_value(t) ** degree.m


def test_interval_eval_contains_point_values():
    for trial in range(200):
        rng = rng_for(13, trial)
        arity = rng.randint(1, 3)
        e = random_expr(rng, arity, rng.randint(0, 4))
        bounds, point = [], []
        for _ in range(arity):
            a, b = sorted(F(rng.randint(-8, 8), rng.randint(1, 4)) for _ in range(2))
            bounds.append((a, b))
            point.append(a + (b - a) * F(rng.randint(0, 4), 4))
        iv = interval_eval(e, box_from_bounds(bounds))
        assert iv.lo <= eval_point(e, point) <= iv.hi


def test_interval_validation():
    with pytest.raises(ValueError):
        Interval(F(1), F(0))


def test_box_sup_bound_brackets_quartic_maximum():
    result = box_sup_bound(parse("x1 * (1 - x1)"), box_from_bounds([(F(0), F(1))]), F(1, 1000))
    assert result.lower <= F(1, 4) <= result.upper
    assert result.width <= F(1, 1000)
    assert not result.budget_exhausted
    assert abs(eval_point(parse("x1 * (1 - x1)"), result.witness)) == result.lower


def test_box_sup_bound_exact_on_flat_top():
    result = box_sup_bound(parse("max(abs(x1), 1)"), box_from_bounds([(F(-1), F(1))]), F(1, 100))
    assert (result.lower, result.upper) == (F(1), F(1))


def test_box_sup_bound_budget_exhaustion_keeps_validity():
    e = parse("x1 * (1 - x1) * (x2 - x1)")
    box = box_from_bounds([(F(0), F(1)), (F(-1), F(1))])
    result = box_sup_bound(e, box, F(1, 10**6), node_budget=10)
    assert result.budget_exhausted
    assert result.lower <= result.upper
    # The returned lower bound is attained at the witness.
    assert abs(eval_point(e, result.witness)) == result.lower


def test_dm_norm_lower_respects_structural_upper():
    for trial in range(100):
        rng = rng_for(14, trial)
        arity = rng.randint(1, 2)
        e = random_expr(rng, arity, rng.randint(0, 4))
        degree = ideal_degree_upper(e, arity)
        points = [random_point(rng, arity) for _ in range(20)]
        lower, witness = dm_norm_lower(e, degree.m, points)
        assert lower <= degree.constant
        assert len(witness) == arity


def test_lipschitz_bound():
    assert lipschitz_bound(parse("max(x1, -x2) + 1/2*x1")) == F(3, 2)
    assert lipschitz_bound(parse("abs(x1)")) == 1
    with pytest.raises(ValueError):
        lipschitz_bound(parse("x1*x2"))


def test_cube_boundary_points_have_unit_sup_norm():
    for p in cube_boundary_points(2, F(1, 4)):
        assert max(abs(c) for c in p) == 1
