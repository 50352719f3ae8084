"""Concrete lattice-ordered algebra backends behind one abstract interface.

All carriers use exact rational entries.  ``PointwiseModel`` is the canonical
finite f-algebra testbed (k-vectors with coordinatewise operations, identity
the all-ones vector).  ``TwistedR2`` is the plane with the twisted product
(x,y)(x',y') = (xx'+xy'+yx', yy'): a lattice-ordered algebra with identity
(0,1) that is not an f-algebra.  ``LocallyConstantModel`` is the f-subalgebra
of a pointwise model whose elements are constant on a fixed prefix of
coordinates.  ``PolySubalgebraDemo`` wraps arity-1 expressions regarded as
functions on [0,1]; its equality is a sampling semi-decision, so it is a
demonstration model only.
"""

from __future__ import annotations

import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

from . import expr as ex
from .sampling import random_rational, rng_for

__all__ = [
    "AlgebraModel", "PointwiseModel", "TwistedR2", "LocallyConstantModel",
    "PolySubalgebraDemo", "twisted_mul", "AxiomResult", "AxiomSuiteReport",
    "axiom_suite", "SubsetSpec", "ClosureResult", "is_f_subalgebra",
]

Vec = tuple[Fraction, ...]


class AlgebraModel(ABC):
    """Abstract carrier with vector-lattice and algebra operations.

    ``leq(x, y)`` is defined as ``join(x, y) == y``.  Models are immutable
    descriptors; all operations are pure.
    """

    name: str = "abstract"
    identity: Any = None

    @abstractmethod
    def add(self, x: Any, y: Any) -> Any: ...

    @abstractmethod
    def scale(self, q: Fraction, x: Any) -> Any: ...

    @abstractmethod
    def mul(self, x: Any, y: Any) -> Any: ...

    @abstractmethod
    def join(self, x: Any, y: Any) -> Any: ...

    @abstractmethod
    def meet(self, x: Any, y: Any) -> Any: ...

    @abstractmethod
    def equal(self, x: Any, y: Any) -> bool: ...

    @abstractmethod
    def zero(self) -> Any: ...

    @abstractmethod
    def sample(self, rng: random.Random, bound: int = 8) -> Any: ...

    def neg(self, x: Any) -> Any:
        return self.scale(Fraction(-1), x)

    def abs(self, x: Any) -> Any:
        return self.join(x, self.neg(x))

    def pos_part(self, x: Any) -> Any:
        return self.join(x, self.zero())

    def leq(self, x: Any, y: Any) -> bool:
        return self.equal(self.join(x, y), y)

    def is_positive(self, x: Any) -> bool:
        return self.leq(self.zero(), x)

    def format_element(self, x: Any) -> str:
        return str(x)


@dataclass(frozen=True)
class PointwiseModel(AlgebraModel):
    """C(K) for K a finite set of k nodes: k-vectors, coordinatewise ops."""

    dimension: int
    name: str = field(default="pointwise", init=False)

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")

    @property
    def identity(self) -> Vec:  # type: ignore[override]
        return tuple(Fraction(1) for _ in range(self.dimension))

    def _check(self, x: Vec) -> Vec:
        if len(x) != self.dimension:
            raise ValueError(f"element has length {len(x)}, expected {self.dimension}")
        return x

    def element(self, values: Sequence) -> Vec:
        return self._check(tuple(Fraction(v) for v in values))

    def add(self, x: Vec, y: Vec) -> Vec:
        return tuple(a + b for a, b in zip(self._check(x), self._check(y)))

    def scale(self, q: Fraction, x: Vec) -> Vec:
        q = Fraction(q)
        return tuple(q * a for a in self._check(x))

    def mul(self, x: Vec, y: Vec) -> Vec:
        return tuple(a * b for a, b in zip(self._check(x), self._check(y)))

    def join(self, x: Vec, y: Vec) -> Vec:
        return tuple(max(a, b) for a, b in zip(self._check(x), self._check(y)))

    def meet(self, x: Vec, y: Vec) -> Vec:
        return tuple(min(a, b) for a, b in zip(self._check(x), self._check(y)))

    def equal(self, x: Vec, y: Vec) -> bool:
        return self._check(x) == self._check(y)

    def zero(self) -> Vec:
        return tuple(Fraction(0) for _ in range(self.dimension))

    def sample(self, rng: random.Random, bound: int = 8) -> Vec:
        return tuple(random_rational(rng, bound) for _ in range(self.dimension))

    def format_element(self, x: Vec) -> str:
        return ",".join(str(c) for c in x)


def twisted_mul(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
    """(x,y)(x',y') = (xx' + xy' + yx', yy')."""
    x, y = a
    xp, yp = b
    return (x * xp + x * yp + y * xp, y * yp)


@dataclass(frozen=True)
class TwistedR2(AlgebraModel):
    """R^2 with coordinatewise lattice structure and the twisted product.

    A lattice-ordered algebra with identity (0,1) that is not an f-algebra:
    (1,0) and (0,1) are positive and disjoint yet (1,0)(0,1) = (1,0).
    """

    name: str = field(default="twisted-r2", init=False)

    @property
    def identity(self) -> Vec:  # type: ignore[override]
        return (Fraction(0), Fraction(1))

    def element(self, values: Sequence) -> Vec:
        vals = tuple(Fraction(v) for v in values)
        if len(vals) != 2:
            raise ValueError("twisted-r2 elements are pairs")
        return vals

    def add(self, x: Vec, y: Vec) -> Vec:
        return (x[0] + y[0], x[1] + y[1])

    def scale(self, q: Fraction, x: Vec) -> Vec:
        q = Fraction(q)
        return (q * x[0], q * x[1])

    def mul(self, x: Vec, y: Vec) -> Vec:
        return twisted_mul(x, y)

    def join(self, x: Vec, y: Vec) -> Vec:
        return (max(x[0], y[0]), max(x[1], y[1]))

    def meet(self, x: Vec, y: Vec) -> Vec:
        return (min(x[0], y[0]), min(x[1], y[1]))

    def equal(self, x: Vec, y: Vec) -> bool:
        return x == y

    def zero(self) -> Vec:
        return (Fraction(0), Fraction(0))

    def sample(self, rng: random.Random, bound: int = 8) -> Vec:
        return (random_rational(rng, bound), random_rational(rng, bound))

    def format_element(self, x: Vec) -> str:
        return ",".join(str(c) for c in x)


@dataclass(frozen=True)
class LocallyConstantModel(PointwiseModel):
    """Vectors constant on the first ``prefix`` coordinates.

    An f-subalgebra of PointwiseModel(dimension) containing the identity;
    the finite-grid surrogate of functions constant near a distinguished
    point.
    """

    prefix: int = 1
    name: str = field(default="locally-constant", init=False)

    def __post_init__(self) -> None:
        super().__post_init__()
        if not 1 <= self.prefix <= self.dimension:
            raise ValueError("prefix must satisfy 1 <= prefix <= dimension")

    def contains(self, x: Vec) -> bool:
        return all(c == x[0] for c in x[: self.prefix])

    def element(self, values: Sequence) -> Vec:
        v = super().element(values)
        if not self.contains(v):
            raise ValueError("element is not constant on the prefix")
        return v

    def sample(self, rng: random.Random, bound: int = 8) -> Vec:
        head = random_rational(rng, bound)
        tail = (
            random_rational(rng, bound) for _ in range(self.dimension - self.prefix)
        )
        return tuple([head] * self.prefix) + tuple(tail)


@dataclass(frozen=True)
class PolySubalgebraDemo(AlgebraModel):
    """Arity-1 expressions regarded as functions on [0,1].

    Element equality is the sampling semi-decision of the expression core
    restricted to [0,1]; this model is for illustration and is excluded from
    exact acceptance suites.
    """

    sample_count: int = 33
    name: str = field(default="poly-demo", init=False)

    @property
    def identity(self) -> ex.Expr:  # type: ignore[override]
        return ex.ONE

    def _points(self) -> list[tuple[Fraction]]:
        # Even grid on [0,1]; denominators are powers of two, exact.
        n = self.sample_count
        return [(Fraction(i, n - 1),) for i in range(n)]

    def add(self, x: ex.Expr, y: ex.Expr) -> ex.Expr:
        return ex.Add(x, y)

    def scale(self, q: Fraction, x: ex.Expr) -> ex.Expr:
        return ex.Scale(Fraction(q), x)

    def mul(self, x: ex.Expr, y: ex.Expr) -> ex.Expr:
        return ex.Mul(x, y)

    def join(self, x: ex.Expr, y: ex.Expr) -> ex.Expr:
        return ex.Join(x, y)

    def meet(self, x: ex.Expr, y: ex.Expr) -> ex.Expr:
        return ex.Meet(x, y)

    def equal(self, x: ex.Expr, y: ex.Expr) -> bool:
        return bool(ex.semantic_eq(x, y, self._points()))

    def zero(self) -> ex.Expr:
        return ex.ZERO

    def sample(self, rng: random.Random, bound: int = 8) -> ex.Expr:
        from .sampling import random_expr

        return random_expr(rng, arity=1, depth=3, bound=bound)

    def format_element(self, x: ex.Expr) -> str:
        return ex.format_expr(x)


# ---------------------------------------------------------------------------
# Axiom suite
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AxiomResult:
    name: str
    group: str  # vector_lattice | lattice_ordered_algebra | f_algebra
    held: bool
    trials: int
    counterexample: Optional[str] = None


@dataclass(frozen=True)
class AxiomSuiteReport:
    model: str
    results: tuple[AxiomResult, ...]

    def passed(self, group: Optional[str] = None) -> bool:
        return all(r.held for r in self.results if group is None or r.group == group)

    def failed_axioms(self) -> list[str]:
        return [r.name for r in self.results if not r.held]


def _axiom_checks(m: AlgebraModel) -> list[tuple[str, str, Callable]]:
    """Each check draws its own operands from rng and returns a witness
    string on failure, None on success."""

    def w(*xs: Any) -> str:
        return "; ".join(m.format_element(x) for x in xs)

    def add_commutes(rng):
        x, y = m.sample(rng), m.sample(rng)
        return None if m.equal(m.add(x, y), m.add(y, x)) else w(x, y)

    def add_associates(rng):
        x, y, z = m.sample(rng), m.sample(rng), m.sample(rng)
        lhs = m.add(m.add(x, y), z)
        rhs = m.add(x, m.add(y, z))
        return None if m.equal(lhs, rhs) else w(x, y, z)

    def join_commutes(rng):
        x, y = m.sample(rng), m.sample(rng)
        return None if m.equal(m.join(x, y), m.join(y, x)) else w(x, y)

    def join_associates(rng):
        x, y, z = m.sample(rng), m.sample(rng), m.sample(rng)
        lhs = m.join(m.join(x, y), z)
        rhs = m.join(x, m.join(y, z))
        return None if m.equal(lhs, rhs) else w(x, y, z)

    def absorption(rng):
        x, y = m.sample(rng), m.sample(rng)
        return None if m.equal(m.join(x, m.meet(x, y)), x) else w(x, y)

    def join_translation(rng):
        x, y, z = m.sample(rng), m.sample(rng), m.sample(rng)
        lhs = m.join(m.add(x, z), m.add(y, z))
        rhs = m.add(m.join(x, y), z)
        return None if m.equal(lhs, rhs) else w(x, y, z)

    def join_positive_homogeneous(rng):
        x, y = m.sample(rng), m.sample(rng)
        q = abs(random_rational(rng))
        lhs = m.scale(q, m.join(x, y))
        rhs = m.join(m.scale(q, x), m.scale(q, y))
        return None if m.equal(lhs, rhs) else f"q={q}; " + w(x, y)

    def mul_commutes(rng):
        x, y = m.sample(rng), m.sample(rng)
        return None if m.equal(m.mul(x, y), m.mul(y, x)) else w(x, y)

    def mul_associates(rng):
        x, y, z = m.sample(rng), m.sample(rng), m.sample(rng)
        lhs = m.mul(m.mul(x, y), z)
        rhs = m.mul(x, m.mul(y, z))
        return None if m.equal(lhs, rhs) else w(x, y, z)

    def mul_distributes(rng):
        x, y, z = m.sample(rng), m.sample(rng), m.sample(rng)
        lhs = m.mul(x, m.add(y, z))
        rhs = m.add(m.mul(x, y), m.mul(x, z))
        return None if m.equal(lhs, rhs) else w(x, y, z)

    def mul_scalar_associates(rng):
        x, y = m.sample(rng), m.sample(rng)
        q, p = random_rational(rng), random_rational(rng)
        lhs = m.mul(m.scale(q, x), m.scale(p, y))
        rhs = m.scale(q * p, m.mul(x, y))
        return None if m.equal(lhs, rhs) else f"q={q}, p={p}; " + w(x, y)

    def mul_positive(rng):
        x, y = m.abs(m.sample(rng)), m.abs(m.sample(rng))
        return None if m.is_positive(m.mul(x, y)) else w(x, y)

    def identity_law(rng):
        if m.identity is None:
            return None
        x = m.sample(rng)
        one = m.identity
        ok = m.equal(m.mul(one, x), x) and m.equal(m.mul(x, one), x)
        return None if ok else w(x)

    def birkhoff(rng):
        x1, x2 = m.sample(rng), m.sample(rng)
        zero = m.zero()
        left = m.meet(m.pos_part(x1), m.mul(m.pos_part(m.neg(x1)), m.pos_part(x2)))
        right = m.meet(m.pos_part(x1), m.mul(m.pos_part(x2), m.pos_part(m.neg(x1))))
        ok = m.equal(left, zero) and m.equal(right, zero)
        return None if ok else w(x1, x2)

    return [
        ("add_commutes", "vector_lattice", add_commutes),
        ("add_associates", "vector_lattice", add_associates),
        ("join_commutes", "vector_lattice", join_commutes),
        ("join_associates", "vector_lattice", join_associates),
        ("absorption", "vector_lattice", absorption),
        ("join_translation_invariant", "vector_lattice", join_translation),
        ("join_positively_homogeneous", "vector_lattice", join_positive_homogeneous),
        ("mul_commutes", "lattice_ordered_algebra", mul_commutes),
        ("mul_associates", "lattice_ordered_algebra", mul_associates),
        ("mul_distributes", "lattice_ordered_algebra", mul_distributes),
        ("mul_scalar_associates", "lattice_ordered_algebra", mul_scalar_associates),
        ("mul_maps_positives_to_positives", "lattice_ordered_algebra", mul_positive),
        ("identity_law", "lattice_ordered_algebra", identity_law),
        ("birkhoff_identities", "f_algebra", birkhoff),
    ]


def axiom_suite(model: AlgebraModel, trials: int, seed: int, bound: int = 8) -> AxiomSuiteReport:
    """Randomized axiom checks, deterministic given the seed.

    Each axiom either held on all trials or carries the first concrete
    counterexample found.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    results = []
    for axiom_idx, (name, group, check) in enumerate(_axiom_checks(model)):
        witness = None
        for trial in range(trials):
            rng = rng_for(seed, axiom_idx, trial)
            witness = check(rng)
            if witness is not None:
                break
        results.append(
            AxiomResult(name, group, witness is None, trials, witness)
        )
    return AxiomSuiteReport(model.name, tuple(results))


# ---------------------------------------------------------------------------
# f-subalgebra closure checking
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubsetSpec:
    """A subset of a model's carrier: a membership predicate plus a way to
    draw members (an explicit element list, a sampler, or both)."""

    name: str
    contains: Callable[[Any], bool]
    elements: tuple = ()
    sampler: Optional[Callable[[random.Random], Any]] = None

    def draw(self, rng: random.Random) -> Any:
        if self.sampler is not None:
            return self.sampler(rng)
        if not self.elements:
            raise ValueError("subset has neither sampler nor elements")
        return rng.choice(self.elements)


@dataclass(frozen=True)
class ClosureResult:
    closed: bool
    operation: Optional[str] = None
    witness: Optional[str] = None


def is_f_subalgebra(
    model: AlgebraModel, subset: SubsetSpec, trials: int, seed: int, bound: int = 8
) -> ClosureResult:
    """Check closure of sampled subset elements under the five operations.

    Returns the first violation found (operation name plus the offending
    inputs), or a closed verdict.
    """
    for trial in range(trials):
        rng = rng_for(seed, trial)
        x = subset.draw(rng)
        y = subset.draw(rng)
        if not (subset.contains(x) and subset.contains(y)):
            return ClosureResult(False, "draw", model.format_element(x))
        q = random_rational(rng, bound)
        candidates = [
            ("add", model.add(x, y)),
            ("mul", model.mul(x, y)),
            ("join", model.join(x, y)),
            ("meet", model.meet(x, y)),
            ("scale", model.scale(q, x)),
        ]
        for op_name, result in candidates:
            if not subset.contains(result):
                detail = (
                    f"{op_name}({model.format_element(x)}; {model.format_element(y)})"
                    f" = {model.format_element(result)}"
                )
                return ClosureResult(False, op_name, detail)
    return ClosureResult(True)
