"""Function calculus, composition law, Birkhoff checks, reconstruction."""

import dataclasses
from fractions import Fraction

import pytest

from latcalc import calculus as calc
from latcalc.expr import parse
from latcalc.models import PointwiseModel, TwistedR2

F = Fraction


def _inst(model, *xs):
    return calc.CalculusInstance(model, tuple(model.element(x) for x in xs))


def test_apply_calculus_pointwise():
    model = PointwiseModel(2)
    value = calc.apply_calculus(parse("abs(x1) + 1"), _inst(model, (1, -2)))
    assert value == (F(2), F(3))


def test_apply_calculus_constants_use_the_identity():
    model = TwistedR2()
    inst = _inst(model, (3, 1))
    assert calc.apply_calculus(parse("1"), inst) == model.identity
    assert calc.apply_calculus(parse("0"), inst) == model.zero()
    assert calc.apply_calculus(parse("x1 * x1"), inst) == model.mul((F(3), F(1)), (F(3), F(1)))


def test_apply_calculus_arity_check():
    model = PointwiseModel(2)
    with pytest.raises(ValueError):
        calc.apply_calculus(parse("x2"), _inst(model, (1, 1)))


def test_compo_check_concrete_instance():
    model = PointwiseModel(3)
    inst = _inst(model, (1, 2, 0), (3, -1, 2))
    report = calc.compo_check(parse("max(x1, x2)"), [parse("x1 + x2"), parse("x1*x2")], inst)
    assert report.ok


def test_birkhoff_check_pointwise_passes():
    model = PointwiseModel(2)
    assert calc.birkhoff_check(model, model.element((3, -2)), model.element((1, 5))).ok


def test_birkhoff_witness_on_twisted_plane():
    model = TwistedR2()
    x1, x2 = (F(1), F(-1)), (F(1), F(1))
    report = calc.birkhoff_check(model, x1, x2)
    assert not report.ok
    # The first identity evaluates to (1, 0) != 0.
    p1 = model.pos_part(x1)
    n1 = model.pos_part(model.neg(x1))
    p2 = model.pos_part(x2)
    assert model.meet(p1, model.mul(n1, p2)) == (F(1), F(0))


def test_birkhoff_grid_search():
    assert calc.birkhoff_grid_search(PointwiseModel(2)) is None
    witness = calc.birkhoff_grid_search(TwistedR2())
    assert witness == ((F(1), F(-2)), (F(1), F(-2)))
    x1, x2 = witness
    assert not calc.birkhoff_check(TwistedR2(), x1, x2).ok


def test_disjointness_check_preconditions_reported():
    model = PointwiseModel(2)
    bad = calc.disjointness_mult_check(
        model, model.element((-1, 0)), model.element((0, 1)), model.element((1, 1))
    )
    assert not bad.ok and "precondition" in bad.detail
    overlap = calc.disjointness_mult_check(
        model, model.element((1, 1)), model.element((0, 1)), model.element((1, 1))
    )
    assert not overlap.ok and "x1 ^ x2" in overlap.detail
    good = calc.disjointness_mult_check(
        model, model.element((1, 0)), model.element((0, 2)), model.element((3, 3))
    )
    assert good.ok


def test_raw_calculus_rejects_constants():
    raw = calc.raw_from_pointwise(PointwiseModel(2))
    with pytest.raises(ValueError):
        raw.eval(parse("x1 + 1"), ((F(1), F(2)),))


def test_derive_order_and_product():
    model = PointwiseModel(3)
    raw = calc.raw_from_pointwise(model)
    x, y = model.element((1, 2, 3)), model.element((1, 5, 3))
    assert calc.derive_order(raw, x, y)
    assert not calc.derive_order(raw, y, x)
    assert calc.derive_product(raw, x, y) == model.mul(x, y)


def test_reconstruction_suite_passes_on_pointwise():
    report = calc.reconstruction_suite(PointwiseModel(4), trials=200, seed=9)
    assert report.passed, report.failed_identities()


def test_reconstruction_suite_detects_broken_raw_calculus():
    model = PointwiseModel(2)
    honest = calc.raw_from_pointwise(model)

    def negated(e, xs):
        # An oracle that flips every sign: linear, but not a calculus.
        return tuple(-v for v in honest.evaluate(e, xs))

    broken = dataclasses.replace(honest, evaluate=negated)
    report = calc.reconstruction_suite(model, trials=100, seed=10, raw=broken)
    assert not report.passed
