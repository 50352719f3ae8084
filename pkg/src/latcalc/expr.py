"""Lattice-polynomial expression trees over exact rationals.

An expression is a finite tree built from rational constants, variables
x1, x2, ..., negation, addition, rational scaling, multiplication and the
lattice operations max/min.  Pointwise evaluation is exact (Fraction
arithmetic throughout); there is no floating point in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

Rational = Union[Fraction, int]

__all__ = [
    "Expr", "Const", "Var", "Neg", "Scale", "Add", "Mul", "Join", "Meet",
    "ExprSyntaxError", "abs_", "pos", "sub", "max_index", "is_lattice_linear",
    "eval_point", "const_fold", "parse", "format_expr", "iter_nodes",
    "substitute", "semantic_eq", "SemanticEqResult", "ZERO", "ONE",
]


class Expr:
    """Base class for expression nodes.  Instances are immutable."""

    __slots__ = ()

    def __add__(self, other: "Expr") -> "Expr":
        return Add(self, other)

    def __mul__(self, other: "Expr") -> "Expr":
        return Mul(self, other)

    def __neg__(self) -> "Expr":
        return Neg(self)

    def __str__(self) -> str:
        return format_expr(self)


@dataclass(frozen=True, slots=True)
class Const(Expr):
    value: Fraction

    def __post_init__(self) -> None:
        # Fraction normalizes to lowest terms with positive denominator.
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True, slots=True)
class Var(Expr):
    index: int  # 1-based

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError(f"variable index must be >= 1, got {self.index}")


@dataclass(frozen=True, slots=True)
class Neg(Expr):
    child: Expr


@dataclass(frozen=True, slots=True)
class Scale(Expr):
    factor: Fraction
    child: Expr

    def __post_init__(self) -> None:
        object.__setattr__(self, "factor", Fraction(self.factor))


@dataclass(frozen=True, slots=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Join(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Meet(Expr):
    left: Expr
    right: Expr


ZERO = Const(Fraction(0))
ONE = Const(Fraction(1))


def abs_(e: Expr) -> Expr:
    """|e| = e v (-e)."""
    return Join(e, Neg(e))


def pos(e: Expr) -> Expr:
    """Positive part e v 0."""
    return Join(e, ZERO)


def sub(a: Expr, b: Expr) -> Expr:
    return Add(a, Neg(b))


def iter_nodes(e: Expr) -> Iterator[Expr]:
    stack = [e]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, (Neg, Scale)):
            stack.append(node.child)
        elif isinstance(node, (Add, Mul, Join, Meet)):
            stack.append(node.left)
            stack.append(node.right)


def max_index(e: Expr) -> int:
    """Largest variable index occurring in e (0 for constant expressions)."""
    return max((n.index for n in iter_nodes(e) if isinstance(n, Var)), default=0)


def is_lattice_linear(e: Expr) -> bool:
    """True when e uses only Var/Neg/Add/Scale/Join/Meet and the constant 0.

    Such expressions are positively homogeneous.
    """
    for n in iter_nodes(e):
        if isinstance(n, Mul):
            return False
        if isinstance(n, Const) and n.value != 0:
            return False
    return True


def eval_point(e: Expr, point: Sequence[Rational]) -> Fraction:
    """Exact value of e at a rational point.

    ``point`` must cover every variable index used in e.
    """
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        if e.index > len(point):
            raise ValueError(
                f"expression uses x{e.index} but point has arity {len(point)}"
            )
        return Fraction(point[e.index - 1])
    if isinstance(e, Neg):
        return -eval_point(e.child, point)
    if isinstance(e, Scale):
        return e.factor * eval_point(e.child, point)
    if isinstance(e, Add):
        return eval_point(e.left, point) + eval_point(e.right, point)
    if isinstance(e, Mul):
        return eval_point(e.left, point) * eval_point(e.right, point)
    if isinstance(e, Join):
        return max(eval_point(e.left, point), eval_point(e.right, point))
    if isinstance(e, Meet):
        return min(eval_point(e.left, point), eval_point(e.right, point))
    raise TypeError(f"not an expression node: {e!r}")


def const_fold(e: Expr) -> Expr:
    """Collapse constant subtrees.  No other rewriting is performed."""
    if isinstance(e, (Const, Var)):
        return e
    if isinstance(e, Neg):
        c = const_fold(e.child)
        return Const(-c.value) if isinstance(c, Const) else Neg(c)
    if isinstance(e, Scale):
        c = const_fold(e.child)
        return Const(e.factor * c.value) if isinstance(c, Const) else Scale(e.factor, c)
    left = const_fold(e.left)
    right = const_fold(e.right)
    if isinstance(left, Const) and isinstance(right, Const):
        if isinstance(e, Add):
            return Const(left.value + right.value)
        if isinstance(e, Mul):
            return Const(left.value * right.value)
        if isinstance(e, Join):
            return Const(max(left.value, right.value))
        if isinstance(e, Meet):
            return Const(min(left.value, right.value))
    return type(e)(left, right)


def substitute(g: Expr, fs: Sequence[Expr]) -> Expr:
    """Replace Var(j) in g by fs[j-1].  Every index used must be covered."""
    if isinstance(g, Const):
        return g
    if isinstance(g, Var):
        if g.index > len(fs):
            raise ValueError(f"substitution covers {len(fs)} slots, g uses x{g.index}")
        return fs[g.index - 1]
    if isinstance(g, Neg):
        return Neg(substitute(g.child, fs))
    if isinstance(g, Scale):
        return Scale(g.factor, substitute(g.child, fs))
    return type(g)(substitute(g.left, fs), substitute(g.right, fs))


# ---------------------------------------------------------------------------
# Parser / printer
#
# Grammar (whitespace insignificant):
#   expr     := sum
#   sum      := prod (("+" | "-") prod)*
#   prod     := unary ("*" unary)*
#   unary    := "-" unary | atom
#   atom     := rational | var | "max(" expr "," expr ")"
#             | "min(" expr "," expr ")" | "abs(" expr ")" | "(" expr ")"
#   rational := integer ("/" positive-integer)?
#   var      := "x" positive-integer
#
# "rational * e" parses to Scale; a unary minus directly in front of a
# numeral folds into the constant, so "-3/2 * x1" is Scale(-3/2, x1).
# ---------------------------------------------------------------------------


class ExprSyntaxError(ValueError):
    """Raised on malformed input; carries the byte offset of the error."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


@dataclass
class _Token:
    kind: str  # NUM, VAR, NAME, OP
    text: str
    offset: int
    value: Optional[Fraction] = None
    index: Optional[int] = None


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*(),":
            tokens.append(_Token("OP", ch, i))
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            num = int(text[start:i])
            den = 1
            if i < n and text[i] == "/":
                j = i + 1
                while j < n and text[j].isdigit():
                    j += 1
                if j == i + 1:
                    raise ExprSyntaxError("expected digits after '/'", i + 1)
                den = int(text[i + 1 : j])
                if den == 0:
                    raise ExprSyntaxError("zero denominator", i + 1)
                i = j
            tokens.append(_Token("NUM", text[start:i], start, value=Fraction(num, den)))
            continue
        if ch.isalpha():
            start = i
            while i < n and text[i].isalnum():
                i += 1
            word = text[start:i]
            if word[0] == "x" and word[1:].isdigit():
                idx = int(word[1:])
                if idx < 1:
                    raise ExprSyntaxError("variable index must be positive", start)
                tokens.append(_Token("VAR", word, start, index=idx))
            elif word in ("max", "min", "abs"):
                tokens.append(_Token("NAME", word, start))
            else:
                raise ExprSyntaxError(f"unknown identifier {word!r}", start)
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], length: int, arity: Optional[int]):
        self.tokens = tokens
        self.pos = 0
        self.length = length
        self.arity = arity

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ExprSyntaxError("unexpected end of input", self.length)
        self.pos += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.next()
        if tok.text != text:
            raise ExprSyntaxError(f"expected {text!r}, found {tok.text!r}", tok.offset)
        return tok

    def parse_sum(self) -> Expr:
        e, _ = self.parse_prod()
        while True:
            tok = self.peek()
            if tok is not None and tok.text in ("+", "-"):
                self.next()
                rhs, _ = self.parse_prod()
                e = Add(e, rhs) if tok.text == "+" else Add(e, Neg(rhs))
            else:
                return e

    def parse_prod(self) -> tuple[Expr, bool]:
        e, literal = self.parse_unary()
        while True:
            tok = self.peek()
            if tok is not None and tok.text == "*":
                self.next()
                rhs, _ = self.parse_unary()
                if literal:
                    assert isinstance(e, Const)
                    e = Scale(e.value, rhs)
                else:
                    e = Mul(e, rhs)
                literal = False
            else:
                return e, literal

    def parse_unary(self) -> tuple[Expr, bool]:
        tok = self.peek()
        if tok is not None and tok.text == "-":
            self.next()
            nxt = self.peek()
            if nxt is not None and nxt.kind == "NUM":
                self.next()
                return Const(-nxt.value), True
            inner, _ = self.parse_unary()
            return Neg(inner), False
        return self.parse_atom()

    def parse_atom(self) -> tuple[Expr, bool]:
        tok = self.next()
        if tok.kind == "NUM":
            return Const(tok.value), True
        if tok.kind == "VAR":
            if self.arity is not None and tok.index > self.arity:
                raise ExprSyntaxError(
                    f"variable x{tok.index} exceeds arity {self.arity}", tok.offset
                )
            return Var(tok.index), False
        if tok.kind == "NAME":
            self.expect("(")
            first = self.parse_sum()
            if tok.text == "abs":
                self.expect(")")
                return abs_(first), False
            self.expect(",")
            second = self.parse_sum()
            self.expect(")")
            node = Join(first, second) if tok.text == "max" else Meet(first, second)
            return node, False
        if tok.text == "(":
            inner = self.parse_sum()
            self.expect(")")
            return inner, False
        raise ExprSyntaxError(f"unexpected token {tok.text!r}", tok.offset)


def parse(text: str, arity: Optional[int] = None) -> Expr:
    """Parse the DSL into an expression tree.

    When ``arity`` is given, any variable index above it is rejected.
    """
    parser = _Parser(_tokenize(text), len(text), arity)
    e = parser.parse_sum()
    tok = parser.peek()
    if tok is not None:
        raise ExprSyntaxError(f"trailing input {tok.text!r}", tok.offset)
    return e


# Precedence levels used by the printer.
_SUM, _PROD, _UNARY, _ATOM = 1, 2, 3, 4


def _fmt_const(q: Fraction) -> str:
    return str(q)


def _wrap(s: str, level: int, minimum: int) -> str:
    return s if level >= minimum else f"({s})"


def _fmt(e: Expr) -> tuple[str, int]:
    if isinstance(e, Const):
        # Negative constants print at unary level ("-3" re-folds on parse).
        return _fmt_const(e.value), _ATOM if e.value >= 0 else _UNARY
    if isinstance(e, Var):
        return f"x{e.index}", _ATOM
    if isinstance(e, Neg):
        s, lvl = _fmt(e.child)
        # A bare numeral after "-" would fold into the constant on re-parse,
        # so constants are parenthesized to preserve the Neg node.
        if isinstance(e.child, Const):
            return f"-({s})", _UNARY
        return "-" + _wrap(s, lvl, _UNARY), _UNARY
    if isinstance(e, Scale):
        s, lvl = _fmt(e.child)
        return f"{_fmt_const(e.factor)} * {_wrap(s, lvl, _UNARY)}", _PROD
    if isinstance(e, Mul):
        ls, llvl = _fmt(e.left)
        # A literal left factor would re-parse as Scale; parenthesize it.
        if isinstance(e.left, Const):
            ls = f"({ls})"
        else:
            ls = _wrap(ls, llvl, _PROD)
        rs, rlvl = _fmt(e.right)
        return f"{ls} * {_wrap(rs, rlvl, _UNARY)}", _PROD
    if isinstance(e, Add):
        ls, llvl = _fmt(e.left)
        ls = _wrap(ls, llvl, _SUM)
        if isinstance(e.right, Neg):
            rs, rlvl = _fmt(e.right.child)
            if isinstance(e.right.child, Const):
                rs = f"({rs})"
            else:
                rs = _wrap(rs, rlvl, _UNARY)
            return f"{ls} - {rs}", _SUM
        rs, rlvl = _fmt(e.right)
        return f"{ls} + {_wrap(rs, rlvl, _PROD)}", _SUM
    if isinstance(e, Join) or isinstance(e, Meet):
        # abs(f) sugar: Join(f, Neg(f)) prints as abs(f).
        if isinstance(e, Join) and isinstance(e.right, Neg) and e.right.child == e.left:
            inner, _ = _fmt(e.left)
            return f"abs({inner})", _ATOM
        name = "max" if isinstance(e, Join) else "min"
        ls, _ = _fmt(e.left)
        rs, _ = _fmt(e.right)
        return f"{name}({ls}, {rs})", _ATOM
    raise TypeError(f"not an expression node: {e!r}")


def format_expr(e: Expr) -> str:
    """Render e in the DSL.  parse(format_expr(e)) is structurally equal to e."""
    return _fmt(e)[0]


@dataclass(frozen=True)
class SemanticEqResult:
    """Outcome of the sampling equality semi-decision.

    ``equal`` means equal at every sampled point; an ``unequal`` outcome is
    always correct and carries an exact witness point.
    """

    equal: bool
    witness: Optional[tuple[Fraction, ...]] = None

    def __bool__(self) -> bool:
        return self.equal


def semantic_eq(
    e1: Expr, e2: Expr, points: "Iterator[Sequence[Rational]] | Sequence[Sequence[Rational]]"
) -> SemanticEqResult:
    """Compare two expressions pointwise on the given sample points.

    This is a semi-decision: agreement on all samples does not prove equality,
    but any disagreement yields an exact counterexample.
    """
    for t in points:
        if eval_point(e1, t) != eval_point(e2, t):
            return SemanticEqResult(False, tuple(Fraction(c) for c in t))
    return SemanticEqResult(True)
