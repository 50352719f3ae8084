"""Expression DSL: parser, printer, exact evaluation, substitution."""

from fractions import Fraction

import pytest

from latcalc.expr import (
    Add, Const, ExprSyntaxError, Join, Meet, Mul, Neg, Scale, Var,
    abs_, const_fold, eval_point, format_expr, is_lattice_linear, max_index,
    parse, semantic_eq, substitute,
)
from latcalc.sampling import random_expr, random_point, rng_for

F = Fraction


def test_parse_precedence():
    assert parse("x1 + x2 * x3") == Add(Var(1), Mul(Var(2), Var(3)))
    assert parse("(x1 + x2) * x3") == Mul(Add(Var(1), Var(2)), Var(3))


def test_parse_literal_left_factor_is_scale():
    assert parse("2*x1") == Scale(F(2), Var(1))
    assert parse("3/4 * max(x1, x2)") == Scale(F(3, 4), Join(Var(1), Var(2)))
    # A literal on the right stays a product node.
    assert parse("x1 * 2") == Mul(Var(1), Const(F(2)))


def test_parse_unary_minus_folds_into_numerals():
    assert parse("-3/2") == Const(F(-3, 2))
    assert parse("-x1") == Neg(Var(1))
    assert parse("--x1") == Neg(Neg(Var(1)))


def test_parse_lattice_atoms():
    assert parse("max(x1, 1/2)") == Join(Var(1), Const(F(1, 2)))
    assert parse("min(x1, x2)") == Meet(Var(1), Var(2))
    assert parse("abs(x1)") == Join(Var(1), Neg(Var(1)))


def test_parse_subtraction_left_associates():
    e = parse("x1 - x2 - x3")
    assert eval_point(e, (F(10), F(3), F(2))) == 5


@pytest.mark.parametrize(
    "text, point, expected",
    [
        ("max(x1, 2*x2) - 1/2", (F(1, 4), F(1, 3)), F(1, 6)),
        ("x1*x2", (F(2), F(-3)), F(-6)),
        ("min(abs(x1), 1)", (F(-5),), F(1)),
        ("-(x1 + x2) * x1", (F(1), F(2)), F(-3)),
    ],
)
def test_eval_point_exact(text, point, expected):
    assert eval_point(parse(text), point) == expected


def test_parse_errors_carry_offset():
    with pytest.raises(ExprSyntaxError) as info:
        parse("x1 + ")
    assert info.value.offset == 5
    with pytest.raises(ExprSyntaxError):
        parse("max(x1)")
    with pytest.raises(ExprSyntaxError):
        parse("x1 @ x2")


def test_parse_arity_limit():
    parse("x2", arity=2)
    with pytest.raises(ExprSyntaxError):
        parse("x3", arity=2)


def test_round_trip_random_trees():
    for trial in range(300):
        rng = rng_for(99, trial)
        e = random_expr(rng, rng.randint(1, 3), rng.randint(0, 6))
        assert parse(format_expr(e)) == e


def test_const_fold():
    assert const_fold(parse("1 + 2*3")) == Const(F(7))
    e = parse("x1 + (1 - 1)")
    folded = const_fold(e)
    assert eval_point(folded, (F(5),)) == 5


def test_substitute_matches_composition_semantics():
    for trial in range(100):
        rng = rng_for(7, trial)
        m, n = rng.randint(1, 3), rng.randint(1, 3)
        g = random_expr(rng, m, rng.randint(0, 4))
        fs = [random_expr(rng, n, rng.randint(0, 4)) for _ in range(m)]
        t = random_point(rng, n)
        inner = [eval_point(f, t) for f in fs]
        assert eval_point(substitute(g, fs), t) == eval_point(g, inner)


def test_semantic_eq_witness_is_exact():
    points = [(F(k),) for k in range(-3, 4)]
    result = semantic_eq(Var(1), abs_(Var(1)), points)
    assert not result
    assert result.witness == (F(-3),)
    assert semantic_eq(abs_(Var(1)), Join(Var(1), Neg(Var(1))), points)


def test_is_lattice_linear_and_max_index():
    assert is_lattice_linear(parse("max(x1, -x2) + 1/2*x1"))
    assert not is_lattice_linear(parse("x1 * x2"))
    assert not is_lattice_linear(parse("x1 + 1"))
    assert max_index(parse("max(x1, x4)")) == 4
    assert max_index(Const(F(1))) == 0
