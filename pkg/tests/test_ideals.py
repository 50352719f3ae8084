"""Order-ideal norms, filtration degrees, lattice-homomorphism contraction."""

from fractions import Fraction

import pytest

from latcalc.ideals import (
    LatticeHom, coordinate_power, f_norm, filtration_check,
    hom_contractivity_check, ia_degree,
)
from latcalc.models import PointwiseModel

F = Fraction


@pytest.mark.parametrize(
    "x, e, expected",
    [
        ((1, 1, 1), (1, 2, 4), F(1)),
        ((2, -6), (1, 2), F(3)),
        ((0, 3), (0, 1), F(3)),  # 0/0 coordinates contribute nothing
        ((0, 0), (1, 1), F(0)),
    ],
)
def test_f_norm_values(x, e, expected):
    model = PointwiseModel(len(x))
    result = f_norm(model.element(x), model.element(e), model)
    assert result.in_ideal and result.value == expected


def test_f_norm_not_in_ideal():
    model = PointwiseModel(3)
    result = f_norm(model.element((0, 0, 1)), model.element((1, 1, 0)), model)
    assert not result.in_ideal
    assert result.witness_coordinate == 3


def test_f_norm_requires_positive_e():
    model = PointwiseModel(2)
    with pytest.raises(ValueError):
        f_norm(model.element((1, 1)), model.element((1, -1)), model)


def test_defining_inequality_is_sharp():
    model = PointwiseModel(3)
    x, e = model.element((2, -6, 0)), model.element((1, 2, 5))
    lam = f_norm(x, e, model).value
    assert model.leq(model.abs(x), model.scale(lam, e))
    assert not model.leq(model.abs(x), model.scale(lam - F(1, 100), e))


def test_coordinate_power():
    assert coordinate_power((F(2), F(0), F(3)), 3) == (F(8), F(0), F(27))


def test_ia_degree():
    model = PointwiseModel(2)
    assert ia_degree(model.element((4, 0)), model.element((2, 1)), model, 4) == (1, F(2))
    # x does not vanish where e does: no power of e absorbs it.
    assert ia_degree(model.element((0, 1)), model.element((1, 0)), model, 6) is None


def test_filtration_monotone_for_e_above_identity():
    model = PointwiseModel(3)
    e = model.element((1, 2, 3))
    xs = [model.element((1, 4, 9)), model.element((0, -2, 3))]
    assert filtration_check(e, model, xs, m_max=5).ok


def test_filtration_rejects_small_e():
    model = PointwiseModel(2)
    report = filtration_check(model.element((1, F(1, 2))), model, [], m_max=3)
    assert not report.ok
    assert "coordinate 2" in report.detail


def test_lattice_hom_apply_and_validation():
    source, target = PointwiseModel(3), PointwiseModel(2)
    hom = LatticeHom(source, target, assignment=(3, 1))
    assert hom.apply(source.element((5, 6, 7))) == (F(7), F(5))
    weighted = LatticeHom(source, target, (3, 1), weights=(F(2), F(1, 2)))
    assert weighted.apply(source.element((5, 6, 7))) == (F(14), F(5, 2))
    with pytest.raises(ValueError):
        LatticeHom(source, target, assignment=(4, 1))
    with pytest.raises(ValueError):
        LatticeHom(source, target, (1, 2), weights=(F(0), F(1)))
    with pytest.raises(ValueError):
        LatticeHom(source, target, (1, 2, 3))


def test_lattice_hom_preserves_lattice_operations():
    source, target = PointwiseModel(3), PointwiseModel(4)
    hom = LatticeHom(source, target, (2, 2, 3, 1), weights=(F(1), F(3), F(1, 2), F(1)))
    x, y = source.element((1, -2, 5)), source.element((0, 7, -1))
    assert hom.apply(source.join(x, y)) == target.join(hom.apply(x), hom.apply(y))
    assert hom.apply(source.add(x, y)) == target.add(hom.apply(x), hom.apply(y))


def test_contractivity_frozen_case():
    source = PointwiseModel(3)
    hom = LatticeHom(source, PointwiseModel(3), (1, 1, 3))
    e = source.element((1, 2, 4))
    report = hom_contractivity_check(hom, e, [source.element((1, 1, 1)), source.element((2, -3, 1))])
    assert report.ok


def test_contractivity_inequality_is_exact():
    source = PointwiseModel(2)
    hom = LatticeHom(source, PointwiseModel(2), (2, 2), weights=(F(3), F(1, 4)))
    e = source.element((1, 2))
    x = source.element((1, -4))
    te, tx = hom.apply(e), hom.apply(x)
    target = PointwiseModel(2)
    assert f_norm(tx, te, target).value <= f_norm(x, e, source).value
