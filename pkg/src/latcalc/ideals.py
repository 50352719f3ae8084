"""Order-ideal membership, order-unit norms and contractivity checks.

On a finite pointwise model, x lies in the ideal generated by a positive
element e iff x vanishes wherever e does, and then
||x||_e = max_j |x_j| / e_j over the coordinates with e_j > 0 (the infimum
of the feasible lambda in |x| <= lambda*e, attained).  Coordinates where
both x_j and e_j vanish contribute 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .models import PointwiseModel, Vec

__all__ = [
    "IdealNormResult", "f_norm", "ia_degree", "coordinate_power",
    "FiltrationReport", "filtration_check", "LatticeHom",
    "ContractivityReport", "hom_contractivity_check",
]


@dataclass(frozen=True)
class IdealNormResult:
    """Either the exact norm value, or a not-in-ideal verdict with the
    offending coordinate (1-based)."""

    value: Optional[Fraction] = None
    witness_coordinate: Optional[int] = None

    @property
    def in_ideal(self) -> bool:
        return self.value is not None


def f_norm(x: Vec, e: Vec, model: PointwiseModel) -> IdealNormResult:
    """||x||_e = inf{lambda >= 0 : |x| <= lambda * e}, exact."""
    x = model.element(x)
    e = model.element(e)
    if any(c < 0 for c in e):
        raise ValueError("e must be positive")
    best = Fraction(0)
    for j, (xj, ej) in enumerate(zip(x, e), start=1):
        if ej == 0:
            if xj != 0:
                return IdealNormResult(witness_coordinate=j)
            continue  # 0 <= lambda * 0 for every lambda
        best = max(best, abs(xj) / ej)
    return IdealNormResult(value=best)


def coordinate_power(e: Vec, m: int) -> Vec:
    """e^m in the coordinatewise product; e^0 is the all-ones identity."""
    return tuple(c**m for c in e)


def ia_degree(
    x: Vec, e: Vec, model: PointwiseModel, m_max: int
) -> Optional[tuple[int, Fraction]]:
    """Minimal m <= m_max with x in I_{e^m}, with the attained norm.

    Scans m = 1, 2, ... so minimality is guaranteed by order.  Returns None
    when no power of e up to m_max absorbs x.
    """
    for m in range(1, m_max + 1):
        result = f_norm(x, coordinate_power(e, m), model)
        if result.in_ideal:
            return m, result.value
    return None


@dataclass(frozen=True)
class FiltrationReport:
    ok: bool
    detail: str = ""


def filtration_check(
    e: Vec,
    model: PointwiseModel,
    xs: Sequence[Vec],
    m_max: int,
) -> FiltrationReport:
    """For e >= identity: e^m <= e^(m+1) and the norms ||x||_{e^m} are
    nonincreasing in m on every sample in I_e."""
    e = model.element(e)
    for j, c in enumerate(e, start=1):
        if c < 1:
            return FiltrationReport(False, f"e is not >= identity at coordinate {j} (e_{j}={c})")
    for m in range(1, m_max):
        lower, higher = coordinate_power(e, m), coordinate_power(e, m + 1)
        if not model.leq(lower, higher):
            return FiltrationReport(False, f"e^{m} <= e^{m + 1} fails")
    for x in xs:
        previous = None
        for m in range(1, m_max + 1):
            result = f_norm(x, coordinate_power(e, m), model)
            if not result.in_ideal:
                return FiltrationReport(
                    False,
                    f"x={model.format_element(x)} left the ideal at m={m}",
                )
            if previous is not None and result.value > previous:
                return FiltrationReport(
                    False,
                    f"norm increased from {previous} to {result.value} at m={m} "
                    f"for x={model.format_element(x)}",
                )
            previous = result.value
    return FiltrationReport(True)


@dataclass(frozen=True)
class LatticeHom:
    """Coordinate selection/duplication with optional positive weights:
    T(x)_j = w_j * x_{s(j)}.

    Every lattice homomorphism between finite pointwise models has this
    shape; the index assignment is 1-based.
    """

    source: PointwiseModel
    target: PointwiseModel
    assignment: tuple[int, ...]
    weights: Optional[tuple[Fraction, ...]] = None

    def __post_init__(self) -> None:
        if len(self.assignment) != self.target.dimension:
            raise ValueError("assignment length must equal the target dimension")
        for s in self.assignment:
            if not 1 <= s <= self.source.dimension:
                raise ValueError(f"assignment index {s} out of source range")
        if self.weights is not None:
            if len(self.weights) != self.target.dimension:
                raise ValueError("weights length must equal the target dimension")
            if any(w <= 0 for w in self.weights):
                raise ValueError("weights must be strictly positive")

    def apply(self, x: Vec) -> Vec:
        x = self.source.element(x)
        values = tuple(x[s - 1] for s in self.assignment)
        if self.weights is None:
            return values
        return tuple(w * v for w, v in zip(self.weights, values))


@dataclass(frozen=True)
class ContractivityReport:
    ok: bool
    detail: str = ""


def hom_contractivity_check(
    hom: LatticeHom, e: Vec, xs: Sequence[Vec]
) -> ContractivityReport:
    """Check T(I_e) in I_{Te} and ||Tx||_{Te} <= ||x||_e on each sample."""
    e = hom.source.element(e)
    if any(c < 0 for c in e):
        raise ValueError("e must be positive")
    te = hom.apply(e)
    for x in xs:
        source_norm = f_norm(x, e, hom.source)
        if not source_norm.in_ideal:
            return ContractivityReport(
                False,
                f"sample x={hom.source.format_element(x)} is not in I_e "
                f"(coordinate {source_norm.witness_coordinate})",
            )
        target_norm = f_norm(hom.apply(x), te, hom.target)
        if not target_norm.in_ideal:
            return ContractivityReport(
                False,
                f"Tx left I_Te for x={hom.source.format_element(x)} "
                f"(coordinate {target_norm.witness_coordinate})",
            )
        if target_norm.value > source_norm.value:
            return ContractivityReport(
                False,
                f"||Tx||_Te = {target_norm.value} > ||x||_e = {source_norm.value} "
                f"for x={hom.source.format_element(x)}",
            )
    return ContractivityReport(True)
