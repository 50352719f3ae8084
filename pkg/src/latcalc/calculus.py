"""Function calculus on algebra models and structure reconstruction.

``apply_calculus`` evaluates an expression homomorphically in a model
(constants go to multiples of the identity, variables to the chosen tuple).
On a pointwise model this must agree coordinatewise with exact scalar
evaluation, which is the ground-truth bridge used by the test suites.

``RawCalculus`` captures the hypothesis of the reconstruction theorem: a
linear evaluation oracle for constant-free expressions over a plain vector
space, with no order or product exposed.  From it the order (via t1 v t2)
and the product (via t1*t2) are derived, and the reconstruction suite checks
that the derived structure is a commutative f-algebra matching the native
one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

from .expr import (
    Add, Const, Expr, Join, Meet, Mul, Neg, Scale, Var,
    eval_point, iter_nodes, max_index, pos, substitute,
)
from .models import AlgebraModel, PointwiseModel
from .sampling import random_rational, rng_for

__all__ = [
    "CalculusInstance", "apply_calculus", "CheckReport", "compo_check",
    "disjointness_mult_check", "birkhoff_check", "birkhoff_grid_search",
    "RawCalculus", "raw_from_pointwise", "derive_order", "derive_product",
    "ReconstructionReport", "reconstruction_suite",
    "SIGMA", "RHO",
]

# sigma(t1,t2) = t1 v t2 and rho(t1,t2) = t1*t2, the two reconstruction maps.
SIGMA = Join(Var(1), Var(2))
RHO = Mul(Var(1), Var(2))


@dataclass(frozen=True)
class CalculusInstance:
    """A model together with the tuple x the calculus is anchored at."""

    model: AlgebraModel
    xs: tuple

    @property
    def arity(self) -> int:
        return len(self.xs)


def apply_calculus(e: Expr, inst: CalculusInstance) -> Any:
    """Homomorphic evaluation: 1 -> 1_X, x_i -> xs[i-1], ops -> model ops."""
    m = inst.model
    if isinstance(e, Const):
        if e.value == 0:
            return m.zero()
        if m.identity is None:
            raise ValueError("model has no identity element; cannot map a nonzero constant")
        return m.scale(e.value, m.identity)
    if isinstance(e, Var):
        if e.index > inst.arity:
            raise ValueError(f"expression uses x{e.index} but instance has arity {inst.arity}")
        return inst.xs[e.index - 1]
    if isinstance(e, Neg):
        return m.neg(apply_calculus(e.child, inst))
    if isinstance(e, Scale):
        return m.scale(e.factor, apply_calculus(e.child, inst))
    left = apply_calculus(e.left, inst)
    right = apply_calculus(e.right, inst)
    if isinstance(e, Add):
        return m.add(left, right)
    if isinstance(e, Mul):
        return m.mul(left, right)
    if isinstance(e, Join):
        return m.join(left, right)
    if isinstance(e, Meet):
        return m.meet(left, right)
    raise TypeError(f"not an expression node: {e!r}")


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    detail: str = ""


def compo_check(g: Expr, fs: Sequence[Expr], inst: CalculusInstance) -> CheckReport:
    """Composition law: applying g at (Psi(f_1), ..., Psi(f_m)) must equal
    applying the substituted expression g(f_1, ..., f_m) at the original
    tuple."""
    if max_index(g) > len(fs):
        raise ValueError(f"g uses x{max_index(g)} but only {len(fs)} inner expressions given")
    inner_values = tuple(apply_calculus(f, inst) for f in fs)
    lhs = apply_calculus(g, CalculusInstance(inst.model, inner_values))
    composed = substitute(g, list(fs))
    rhs = apply_calculus(composed, inst)
    if inst.model.equal(lhs, rhs):
        return CheckReport(True)
    return CheckReport(
        False,
        f"lhs={inst.model.format_element(lhs)} rhs={inst.model.format_element(rhs)}",
    )


def disjointness_mult_check(model: AlgebraModel, x1, x2, x3) -> CheckReport:
    """For positive x1, x2, x3 with x1 ^ x2 = 0, an f-algebra must satisfy
    (x3*x1) ^ x2 = 0.  Precondition violations are reported distinctly."""
    zero = model.zero()
    for label, x in (("x1", x1), ("x2", x2), ("x3", x3)):
        if not model.is_positive(x):
            return CheckReport(False, f"precondition: {label} is not positive")
    if not model.equal(model.meet(x1, x2), zero):
        return CheckReport(False, "precondition: x1 ^ x2 != 0")
    product = model.meet(model.mul(x3, x1), x2)
    if model.equal(product, zero):
        return CheckReport(True)
    return CheckReport(False, f"(x3*x1) ^ x2 = {model.format_element(product)} != 0")


def birkhoff_check(model: AlgebraModel, x1, x2) -> CheckReport:
    """Both Birkhoff f-algebra identities, evaluated exactly."""
    zero = model.zero()
    p1 = model.pos_part(x1)
    n1 = model.pos_part(model.neg(x1))
    p2 = model.pos_part(x2)
    left = model.meet(p1, model.mul(n1, p2))
    right = model.meet(p1, model.mul(p2, n1))
    if model.equal(left, zero) and model.equal(right, zero):
        return CheckReport(True)
    return CheckReport(
        False,
        f"left={model.format_element(left)} right={model.format_element(right)}",
    )


def birkhoff_grid_search(
    model: AlgebraModel, radius: int = 2
) -> Optional[tuple[Any, Any]]:
    """Search integer pairs with entries in [-radius, radius] for a Birkhoff
    violation; returns the first witness in lexicographic order, or None.

    Only models with two-component elements are supported.
    """
    values = [Fraction(v) for v in range(-radius, radius + 1)]
    for a, b, c, d in itertools.product(values, repeat=4):
        x1, x2 = (a, b), (c, d)
        if not birkhoff_check(model, x1, x2).ok:
            return x1, x2
    return None


# ---------------------------------------------------------------------------
# Raw calculus and reconstruction
# ---------------------------------------------------------------------------

def _check_constant_free(e: Expr) -> None:
    for n in iter_nodes(e):
        if isinstance(n, Const) and n.value != 0:
            raise ValueError(
                "raw calculus is restricted to the constant-free fragment "
                f"(offending constant {n.value})"
            )


@dataclass(frozen=True)
class RawCalculus:
    """Evaluation oracle over a plain vector space.

    ``evaluate(e, xs)`` is assumed linear and projection-compatible; only the
    vector-space structure (add/scale/equal/zero) is exposed alongside it, so
    order and product must be reconstructed through sigma and rho.
    """

    evaluate: Callable[[Expr, tuple], Any]
    add: Callable[[Any, Any], Any]
    scale: Callable[[Fraction, Any], Any]
    equal: Callable[[Any, Any], bool]
    zero: Callable[[], Any]
    sample: Callable[..., Any]
    format_element: Callable[[Any], str] = staticmethod(str)

    def eval(self, e: Expr, xs: tuple) -> Any:
        _check_constant_free(e)
        return self.evaluate(e, xs)


def raw_from_pointwise(model: PointwiseModel) -> RawCalculus:
    """The pointwise calculus with order and product forgotten."""

    def evaluate(e: Expr, xs: tuple):
        return tuple(
            eval_point(e, [x[j] for x in xs]) for j in range(model.dimension)
        )

    return RawCalculus(
        evaluate=evaluate,
        add=model.add,
        scale=model.scale,
        equal=model.equal,
        zero=model.zero,
        sample=model.sample,
        format_element=model.format_element,
    )


def derive_order(raw: RawCalculus, x1, x2) -> bool:
    """x1 <= x2 iff sigma(x1, x2) = x2 under the raw calculus."""
    return raw.equal(raw.eval(SIGMA, (x1, x2)), x2)


def derive_product(raw: RawCalculus, x1, x2):
    """x1 * x2 := rho(x1, x2) under the raw calculus."""
    return raw.eval(RHO, (x1, x2))


def _derived_identity_checks(raw: RawCalculus):
    """The reconstruction obligations, each drawing operands from rng and
    returning a witness string on failure."""

    def sigma(x, y):
        return raw.eval(SIGMA, (x, y))

    def rho(x, y):
        return raw.eval(RHO, (x, y))

    def pos_part(x):
        return sigma(x, raw.zero())

    def w(*xs) -> str:
        return "; ".join(raw.format_element(x) for x in xs)

    def linearity(rng):
        x, y = raw.sample(rng), raw.sample(rng)
        lam = random_rational(rng)
        # sigma(x,y) + lam*(x+y) computed through one raw evaluation vs. two
        e = Add(Join(Var(1), Var(2)), Scale(lam, Add(Var(1), Var(2))))
        lhs = raw.eval(e, (x, y))
        rhs = raw.add(sigma(x, y), raw.scale(lam, raw.add(x, y)))
        return None if raw.equal(lhs, rhs) else f"lam={lam}; " + w(x, y)

    def projection(rng):
        x, y = raw.sample(rng), raw.sample(rng)
        ok = raw.equal(raw.eval(Var(1), (x, y)), x) and raw.equal(
            raw.eval(Var(2), (x, y)), y
        )
        return None if ok else w(x, y)

    def product_commutes(rng):
        x, y = raw.sample(rng), raw.sample(rng)
        return None if raw.equal(rho(x, y), rho(y, x)) else w(x, y)

    def product_associates(rng):
        x, y, z = raw.sample(rng), raw.sample(rng), raw.sample(rng)
        lhs = rho(rho(x, y), z)
        rhs = rho(x, rho(y, z))
        return None if raw.equal(lhs, rhs) else w(x, y, z)

    def product_distributes(rng):
        x, y, z = raw.sample(rng), raw.sample(rng), raw.sample(rng)
        lhs = rho(x, raw.add(y, z))
        rhs = raw.add(rho(x, y), rho(x, z))
        return None if raw.equal(lhs, rhs) else w(x, y, z)

    def scalar_associates(rng):
        x, y = raw.sample(rng), raw.sample(rng)
        lam, mu = random_rational(rng), random_rational(rng)
        lhs = rho(raw.scale(lam, x), raw.scale(mu, y))
        rhs = raw.scale(lam * mu, rho(x, y))
        return None if raw.equal(lhs, rhs) else f"lam={lam}, mu={mu}; " + w(x, y)

    def positive_products(rng):
        x, y = pos_part(raw.sample(rng)), pos_part(raw.sample(rng))
        product = rho(x, y)
        return None if raw.equal(sigma(product, raw.zero()), product) else w(x, y)

    def birkhoff(rng):
        x1, x2 = raw.sample(rng), raw.sample(rng)
        left = Meet(pos(Var(1)), Mul(pos(Neg(Var(1))), pos(Var(2))))
        right = Meet(pos(Var(1)), Mul(pos(Var(2)), pos(Neg(Var(1)))))
        zero = raw.zero()
        ok = raw.equal(raw.eval(left, (x1, x2)), zero) and raw.equal(
            raw.eval(right, (x1, x2)), zero
        )
        return None if ok else w(x1, x2)

    return [
        ("linearity", linearity),
        ("projection", projection),
        ("product_commutes", product_commutes),
        ("product_associates", product_associates),
        ("product_distributes", product_distributes),
        ("product_scalar_associates", scalar_associates),
        ("positive_products_positive", positive_products),
        ("birkhoff_identities", birkhoff),
    ]


@dataclass(frozen=True)
class ReconstructionReport:
    results: tuple[tuple[str, bool, str], ...]  # (identity, held, witness)

    @property
    def passed(self) -> bool:
        return all(held for _, held, _ in self.results)

    def failed_identities(self) -> list[str]:
        return [name for name, held, _ in self.results if not held]


def reconstruction_suite(
    model: PointwiseModel,
    trials: int,
    seed: int,
    raw: Optional[RawCalculus] = None,
) -> ReconstructionReport:
    """Check that the structure derived from the raw calculus is a
    commutative f-algebra coinciding with the native one.

    ``raw`` defaults to the forgetful pointwise calculus; an adversarial raw
    oracle can be injected to confirm violation detection.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if raw is None:
        raw = raw_from_pointwise(model)

    def derived_vs_native_order(rng):
        x, z = model.sample(rng), model.sample(rng)
        y = model.join(x, z)  # guarantees some comparable pairs
        for a, b in ((x, y), (x, z), (y, x)):
            if derive_order(raw, a, b) != model.leq(a, b):
                return f"{model.format_element(a)}; {model.format_element(b)}"
        return None

    def derived_vs_native_join(rng):
        x, y = model.sample(rng), model.sample(rng)
        derived = raw.eval(SIGMA, (x, y))
        return None if model.equal(derived, model.join(x, y)) else (
            f"{model.format_element(x)}; {model.format_element(y)}"
        )

    def derived_vs_native_product(rng):
        x, y = model.sample(rng), model.sample(rng)
        derived = derive_product(raw, x, y)
        return None if model.equal(derived, model.mul(x, y)) else (
            f"{model.format_element(x)}; {model.format_element(y)}"
        )

    checks = [
        ("derived_order_matches_native", derived_vs_native_order),
        ("derived_join_matches_native", derived_vs_native_join),
        ("derived_product_matches_native", derived_vs_native_product),
    ] + _derived_identity_checks(raw)

    results = []
    for check_idx, (name, check) in enumerate(checks):
        witness = None
        for trial in range(trials):
            rng = rng_for(seed, check_idx, trial)
            witness = check(rng)
            if witness is not None:
                break
        results.append((name, witness is None, witness or ""))
    return ReconstructionReport(tuple(results))
