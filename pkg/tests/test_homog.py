"""Homogeneous parts: linearization, h_part, exact ray residuals."""

from fractions import Fraction

import pytest

from latcalc.expr import eval_point, parse, semantic_eq
from latcalc.homog import default_t_sequence, h_part, linearize, numeric_h_check
from latcalc.sampling import grid_points, random_point, rng_for

F = Fraction


def _pointwise_equal(e1, e2, arity):
    return bool(semantic_eq(e1, e2, grid_points(arity, seed=0)))


@pytest.mark.parametrize(
    "text, h_text",
    [
        ("x1*x1", "0"),
        ("max(x1, x2*x2)", "max(x1, 0)"),
        ("2*x1 + min(x2, x1*x2)", "2*x1 + min(x2, 0)"),
        ("abs(x1) - x2", "abs(x1) - x2"),
    ],
)
def test_h_part_frozen(text, h_text):
    e = parse(text)
    phi = h_part(e)
    assert phi is not None
    arity = 2
    assert _pointwise_equal(phi, parse(h_text), arity)


def test_linearize_constant_part():
    assert linearize(parse("max(x1, 1)")).c == 1
    assert linearize(parse("x1 + x2*x2")).c == 0


def test_h_part_none_when_value_at_origin_nonzero():
    assert h_part(parse("x1 + 1")) is None
    assert h_part(parse("max(x1, 1/3)")) is None


def test_numeric_h_check_exact_halving():
    report = numeric_h_check(parse("x1*x2"), [(F(1), F(1))])
    # f(t,t)/t = t and the homogeneous part vanishes, so residual is t itself.
    for row in report.rows:
        assert row.max_residual == row.t
    assert report.nonincreasing
    assert report.final_residual == default_t_sequence()[-1]
    assert report.passed


def test_numeric_h_check_rejects_nonzero_origin():
    with pytest.raises(ValueError):
        numeric_h_check(parse("x1 + 1"), [(F(1),)])
    with pytest.raises(ValueError):
        numeric_h_check(parse("x1"), [(F(1),)], t_sequence=[F(0)])


def test_lattice_linear_residual_is_identically_zero():
    e = parse("max(x1, -2*x2) + min(x1, x2)")
    dirs = [random_point(rng_for(21, k), 2) for k in range(10)]
    report = numeric_h_check(e, dirs)
    assert all(row.max_residual == 0 for row in report.rows)


def test_scaling_relation_of_h_part():
    # f_h(x) = lim f(tx)/t is positively homogeneous of degree 1.
    e = parse("max(x1, x2*x2) - min(x1, 3*x2)")
    phi = h_part(e)
    assert phi is not None
    for trial in range(50):
        rng = rng_for(22, trial)
        t = random_point(rng, 2)
        lam = F(rng.randint(1, 8), rng.randint(1, 8))
        scaled = [lam * c for c in t]
        assert eval_point(phi, scaled) == lam * eval_point(phi, t)
