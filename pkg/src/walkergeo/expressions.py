"""Exact symbolic scalar fields on R^3 in coordinates (x, y, z).

The expression language is deliberately tiny: rational literals, the three
coordinates, named constants bound to rational values, the four arithmetic
operations, literal integer powers, and the unary functions exp and sqrt.
Everything downstream (metrics, structure tensors, classification conditions)
is built from these nodes, differentiated exactly, and then evaluated
numerically at sampled points.

Grammar accepted by `parse` (a strict superset of the required one: a single
leading sign is allowed so that components like -1 can be written directly):

    expr    := ["+"|"-"] term (("+"|"-") term)*
    term    := factor (("*"|"/") factor)*
    factor  := base ("^" ["-"] integer)?
    base    := number | identifier | "(" expr ")"
             | ("exp"|"sqrt") "(" expr ")"
    number  := digits ("." digits)?

ASTs are immutable, compare structurally, and hash. `to_source` prints an
expression so that reparsing reproduces the exact tree (`parse(to_source(e))
== e`); to keep that property the printer parenthesizes right operands of
same-precedence binary nodes.

Numeric literals are exact `Fraction`s. The smart constructors used by
`diff` and by the Python operator overloads only ever produce fractions with
denominators of the form 2^a * 5^b (always printable as finite decimals), so
round-tripping is lossless.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Union

import numpy as np

from .errors import (
    EvaluationError,
    ExponentError,
    ParseError,
    UnboundIdentifierError,
)

Rational = Union[int, Fraction]

_VARIABLES = ("x", "y", "z")
_FUNCTIONS = ("exp", "sqrt")


class Expr:
    """Base class for AST nodes; provides arithmetic operator sugar."""

    __slots__ = ()

    def __add__(self, other):
        return add(self, as_expr(other))

    def __radd__(self, other):
        return add(as_expr(other), self)

    def __sub__(self, other):
        return sub(self, as_expr(other))

    def __rsub__(self, other):
        return sub(as_expr(other), self)

    def __mul__(self, other):
        return mul(self, as_expr(other))

    def __rmul__(self, other):
        return mul(as_expr(other), self)

    def __truediv__(self, other):
        return div(self, as_expr(other))

    def __rtruediv__(self, other):
        return div(as_expr(other), self)

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            raise TypeError("exponents must be literal integers")
        return pow_of(self, exponent)

    def __neg__(self):
        return neg(self)

    def __str__(self) -> str:
        return to_source(self)


@dataclass(frozen=True, slots=True)
class Num(Expr):
    """Nonnegative rational literal (negatives are Neg-wrapped)."""

    value: Fraction

    def __post_init__(self):
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True, slots=True)
class Const(Expr):
    """Named constant bound to a rational value at parse/build time."""

    name: str
    value: Fraction


@dataclass(frozen=True, slots=True)
class Var(Expr):
    name: str


@dataclass(frozen=True, slots=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Pow(Expr):
    base: Expr
    exponent: int


@dataclass(frozen=True, slots=True)
class Call(Expr):
    func: str
    arg: Expr


@dataclass(frozen=True, slots=True)
class Neg(Expr):
    arg: Expr


X = Var("x")
Y = Var("y")
Z = Var("z")
ZERO = Num(Fraction(0))
ONE = Num(Fraction(1))


def as_expr(value) -> Expr:
    """Coerce an int, Fraction, or Expr into an Expr.

    Floats are rejected: literals must stay exact rationals.
    """
    if isinstance(value, Expr):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalar fields")
    if isinstance(value, (int, Fraction)):
        return _num(Fraction(value))
    raise TypeError(f"cannot interpret {value!r} as a scalar field")


def _num(q: Fraction) -> Expr:
    if q < 0:
        return Neg(Num(-q))
    return Num(q)


def _is_zero(e: Expr) -> bool:
    return isinstance(e, Num) and e.value == 0


def _is_one(e: Expr) -> bool:
    return isinstance(e, Num) and e.value == 1


def add(a: Expr, b: Expr) -> Expr:
    if _is_zero(a):
        return b
    if _is_zero(b):
        return a
    if isinstance(a, Num) and isinstance(b, Num):
        return _num(a.value + b.value)
    return Add(a, b)


def sub(a: Expr, b: Expr) -> Expr:
    if _is_zero(b):
        return a
    if _is_zero(a):
        return neg(b)
    if isinstance(a, Num) and isinstance(b, Num):
        return _num(a.value - b.value)
    return Sub(a, b)


def mul(a: Expr, b: Expr) -> Expr:
    if _is_zero(a) or _is_zero(b):
        return ZERO
    if _is_one(a):
        return b
    if _is_one(b):
        return a
    if isinstance(a, Num) and isinstance(b, Num):
        return _num(a.value * b.value)
    return Mul(a, b)


def div(a: Expr, b: Expr) -> Expr:
    if _is_zero(a):
        return ZERO
    if _is_one(b):
        return a
    if isinstance(a, Num) and isinstance(b, Num) and b.value != 0:
        q = a.value / b.value
        if q.denominator == 1:
            return _num(q)
    return Div(a, b)


def neg(a: Expr) -> Expr:
    if isinstance(a, Neg):
        return a.arg
    if isinstance(a, Num):
        return _num(-a.value)
    return Neg(a)


def pow_of(base: Expr, exponent: int) -> Expr:
    if exponent == 0:
        return ONE
    if exponent == 1:
        return base
    if isinstance(base, Num) and exponent > 0:
        return _num(base.value**exponent)
    return Pow(base, exponent)


def exp_of(arg: Expr) -> Expr:
    if _is_zero(arg):
        return ONE
    return Call("exp", arg)


def sqrt_of(arg: Expr) -> Expr:
    return Call("sqrt", arg)


def variables(e: Expr) -> frozenset[str]:
    """Names of the coordinates the expression actually mentions."""
    out: set[str] = set()
    for node in walk(e):
        if isinstance(node, Var):
            out.add(node.name)
    return frozenset(out)


def walk(e: Expr) -> Iterator[Expr]:
    stack = [e]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, (Add, Sub, Mul, Div)):
            stack.append(node.left)
            stack.append(node.right)
        elif isinstance(node, Pow):
            stack.append(node.base)
        elif isinstance(node, (Call, Neg)):
            stack.append(node.arg)


# ---------------------------------------------------------------------------
# Differentiation


def diff(e: Expr, var: str) -> Expr:
    """Exact partial derivative with respect to 'x', 'y', or 'z'."""
    if var not in _VARIABLES:
        raise ValueError(f"unknown variable {var!r}")
    if isinstance(e, (Num, Const)):
        return ZERO
    if isinstance(e, Var):
        return ONE if e.name == var else ZERO
    if isinstance(e, Add):
        return add(diff(e.left, var), diff(e.right, var))
    if isinstance(e, Sub):
        return sub(diff(e.left, var), diff(e.right, var))
    if isinstance(e, Neg):
        return neg(diff(e.arg, var))
    if isinstance(e, Mul):
        return add(
            mul(diff(e.left, var), e.right),
            mul(e.left, diff(e.right, var)),
        )
    if isinstance(e, Div):
        return div(
            sub(
                mul(diff(e.left, var), e.right),
                mul(e.left, diff(e.right, var)),
            ),
            pow_of(e.right, 2),
        )
    if isinstance(e, Pow):
        return mul(
            mul(_num(Fraction(e.exponent)), pow_of(e.base, e.exponent - 1)),
            diff(e.base, var),
        )
    if isinstance(e, Call):
        inner = diff(e.arg, var)
        if e.func == "exp":
            return mul(e, inner)
        if e.func == "sqrt":
            return div(inner, mul(_num(Fraction(2)), e))
    raise TypeError(f"cannot differentiate {type(e).__name__}")


def gradient(e: Expr) -> tuple[Expr, Expr, Expr]:
    return (diff(e, "x"), diff(e, "y"), diff(e, "z"))


# ---------------------------------------------------------------------------
# Printing

_PREC_ADD = 10
_PREC_NEG = 15
_PREC_MUL = 20
_PREC_POW = 30
_PREC_ATOM = 40


def _precedence(e: Expr) -> int:
    if isinstance(e, (Add, Sub)):
        return _PREC_ADD
    if isinstance(e, Neg):
        return _PREC_NEG
    if isinstance(e, (Mul, Div)):
        return _PREC_MUL
    if isinstance(e, Pow):
        return _PREC_POW
    return _PREC_ATOM


def _decimal(q: Fraction) -> str:
    """Finite-decimal rendering; exact for denominators 2^a * 5^b."""
    if q.denominator == 1:
        return str(q.numerator)
    den = q.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        # Not finitely printable; falls back to a quotient (reparses as Div).
        return f"{q.numerator}/{q.denominator}"
    k = max(twos, fives)
    scaled = q.numerator * 10**k // q.denominator
    digits = str(scaled).zfill(k + 1)
    return f"{digits[:-k]}.{digits[-k:]}"


def to_source(e: Expr) -> str:
    """Render an AST to source text that reparses to the identical tree."""

    def wrap(child: Expr, minimum: int) -> str:
        text = to_source(child)
        if _precedence(child) < minimum:
            return f"({text})"
        return text

    if isinstance(e, Num):
        return _decimal(e.value)
    if isinstance(e, Const):
        return e.name
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Add):
        return f"{wrap(e.left, _PREC_ADD)} + {wrap(e.right, _PREC_ADD + 1)}"
    if isinstance(e, Sub):
        return f"{wrap(e.left, _PREC_ADD)} - {wrap(e.right, _PREC_ADD + 1)}"
    if isinstance(e, Mul):
        return f"{wrap(e.left, _PREC_MUL)} * {wrap(e.right, _PREC_MUL + 1)}"
    if isinstance(e, Div):
        return f"{wrap(e.left, _PREC_MUL)} / {wrap(e.right, _PREC_MUL + 1)}"
    if isinstance(e, Neg):
        return f"-{wrap(e.arg, _PREC_NEG + 1)}"
    if isinstance(e, Pow):
        return f"{wrap(e.base, _PREC_ATOM)}^{e.exponent}"
    if isinstance(e, Call):
        return f"{e.func}({to_source(e.arg)})"
    raise TypeError(f"cannot print {type(e).__name__}")


# ---------------------------------------------------------------------------
# Parsing


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str  # 'num', 'ident', 'op', 'end'
    text: str
    position: int


def _tokenize(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(source)
    while i < n:
        c = source[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            if j < n and source[j] == ".":
                j += 1
                if j >= n or not source[j].isdigit():
                    raise ParseError("malformed number", source, i)
                while j < n and source[j].isdigit():
                    j += 1
            tokens.append(_Token("num", source[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(_Token("ident", source[i:j], i))
            i = j
            continue
        if c in "+-*/^()":
            tokens.append(_Token("op", c, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", source, i)
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, source: str, constants: Mapping[str, Fraction]):
        self.source = source
        self.constants = constants
        self.tokens = _tokenize(source)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect_op(self, text: str) -> _Token:
        token = self.peek()
        if token.kind != "op" or token.text != text:
            raise ParseError(f"expected {text!r}", self.source, token.position)
        return self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        token = self.peek()
        if token.kind != "end":
            raise ParseError(
                f"unexpected trailing input {token.text!r}",
                self.source,
                token.position,
            )
        return e

    def expr(self) -> Expr:
        token = self.peek()
        negate = False
        if token.kind == "op" and token.text in "+-":
            self.advance()
            negate = token.text == "-"
        e = self.term()
        if negate:
            e = Neg(e)
        while True:
            token = self.peek()
            if token.kind == "op" and token.text in "+-":
                self.advance()
                right = self.term()
                e = Add(e, right) if token.text == "+" else Sub(e, right)
            else:
                return e

    def term(self) -> Expr:
        e = self.factor()
        while True:
            token = self.peek()
            if token.kind == "op" and token.text in "*/":
                self.advance()
                right = self.factor()
                e = Mul(e, right) if token.text == "*" else Div(e, right)
            else:
                return e

    def factor(self) -> Expr:
        e = self.base()
        token = self.peek()
        if token.kind == "op" and token.text == "^":
            self.advance()
            e = Pow(e, self.integer_exponent())
        return e

    def integer_exponent(self) -> int:
        sign = 1
        token = self.peek()
        if token.kind == "op" and token.text == "-":
            self.advance()
            sign = -1
        token = self.peek()
        if token.kind != "num" or "." in token.text:
            raise ExponentError(
                "exponent must be a literal integer",
                self.source,
                token.position,
            )
        self.advance()
        return sign * int(token.text)

    def base(self) -> Expr:
        token = self.peek()
        if token.kind == "num":
            self.advance()
            return Num(_parse_number(token.text))
        if token.kind == "ident":
            self.advance()
            name = token.text
            if name in _FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(name, arg)
            if name in _VARIABLES:
                return Var(name)
            if name in self.constants:
                return Const(name, Fraction(self.constants[name]))
            raise UnboundIdentifierError(
                f"unbound identifier {name!r}", self.source, token.position
            )
        if token.kind == "op" and token.text == "(":
            self.advance()
            e = self.expr()
            self.expect_op(")")
            return e
        raise ParseError(
            f"unexpected token {token.text!r}" if token.kind != "end"
            else "unexpected end of input",
            self.source,
            token.position,
        )


def _parse_number(text: str) -> Fraction:
    if "." in text:
        whole, frac = text.split(".")
        return Fraction(int(whole + frac), 10 ** len(frac))
    return Fraction(int(text))


def parse(source: str, constants: Mapping[str, Rational] | None = None) -> Expr:
    """Parse expression source into an AST.

    `constants` binds identifier names to exact rational values; any other
    identifier besides x, y, z, exp, sqrt is rejected with its position.
    """
    bound = {name: Fraction(v) for name, v in (constants or {}).items()}
    for name in bound:
        if name in _VARIABLES or name in _FUNCTIONS:
            raise ValueError(f"constant name {name!r} shadows a builtin")
    return _Parser(source, bound).parse()


# ---------------------------------------------------------------------------
# Numeric evaluation

Point = tuple[float, float, float]


def evaluate_with_scale(e: Expr, points) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate at one point (shape (3,)) or a batch (shape (n, 3)).

    Returns (values, scale) where scale at each point is the largest
    magnitude any subexpression attained there. Zero tests divide residuals
    by (1 + scale), so cancellation-heavy identities are judged relative to
    the size of the quantities that cancelled.

    Raises EvaluationError on division by exactly zero, sqrt of a
    non-positive argument, or a non-finite result (overflow), reporting the
    offending subexpression and the first offending point.
    """
    pts = np.asarray(points, dtype=float)
    single = pts.ndim == 1
    if single:
        pts = pts.reshape(1, 3)
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise ValueError("points must have shape (3,) or (n, 3)")
    coords = {"x": pts[:, 0], "y": pts[:, 1], "z": pts[:, 2]}

    def fail(reason: str, node: Expr, mask: np.ndarray):
        index = int(np.argmax(mask))
        raise EvaluationError(reason, to_source(node), pts[index])

    def ev(node: Expr) -> tuple[np.ndarray, np.ndarray]:
        if isinstance(node, Num):
            v = np.full(pts.shape[0], float(node.value))
            return v, np.abs(v)
        if isinstance(node, Const):
            v = np.full(pts.shape[0], float(node.value))
            return v, np.abs(v)
        if isinstance(node, Var):
            v = coords[node.name]
            return v, np.abs(v)
        if isinstance(node, Add):
            a, sa = ev(node.left)
            b, sb = ev(node.right)
            v = a + b
            return v, np.maximum(np.maximum(sa, sb), np.abs(v))
        if isinstance(node, Sub):
            a, sa = ev(node.left)
            b, sb = ev(node.right)
            v = a - b
            return v, np.maximum(np.maximum(sa, sb), np.abs(v))
        if isinstance(node, Neg):
            a, sa = ev(node.arg)
            return -a, sa
        if isinstance(node, Mul):
            a, sa = ev(node.left)
            b, sb = ev(node.right)
            v = a * b
            if not np.all(np.isfinite(v)):
                fail("non-finite value", node, ~np.isfinite(v))
            return v, np.maximum(np.maximum(sa, sb), np.abs(v))
        if isinstance(node, Div):
            a, sa = ev(node.left)
            b, sb = ev(node.right)
            zero = b == 0.0
            if np.any(zero):
                fail("division by zero", node, zero)
            v = a / b
            if not np.all(np.isfinite(v)):
                fail("non-finite value", node, ~np.isfinite(v))
            return v, np.maximum(np.maximum(sa, sb), np.abs(v))
        if isinstance(node, Pow):
            a, sa = ev(node.base)
            if node.exponent < 0:
                zero = a == 0.0
                if np.any(zero):
                    fail("division by zero", node, zero)
            with np.errstate(over="ignore", divide="ignore"):
                v = a ** float(node.exponent)
            if not np.all(np.isfinite(v)):
                fail("non-finite value", node, ~np.isfinite(v))
            return v, np.maximum(sa, np.abs(v))
        if isinstance(node, Call):
            a, sa = ev(node.arg)
            if node.func == "sqrt":
                bad = a <= 0.0
                if np.any(bad):
                    fail("sqrt of a non-positive argument", node, bad)
                v = np.sqrt(a)
            else:
                with np.errstate(over="ignore"):
                    v = np.exp(a)
                if not np.all(np.isfinite(v)):
                    fail("non-finite value", node, ~np.isfinite(v))
            return v, np.maximum(sa, np.abs(v))
        raise TypeError(f"cannot evaluate {type(node).__name__}")

    values, scale = ev(e)
    if single:
        return values[0], scale[0]
    return values, scale


def evaluate(e: Expr, points):
    """Values only; see evaluate_with_scale."""
    return evaluate_with_scale(e, points)[0]
