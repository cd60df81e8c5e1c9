"""Third-order jets: values plus all partial derivatives up to order 3.

A jet stores the truncated Taylor expansion of a scalar field at a point,
indexed by multi-indices (i, j, k) with i + j + k <= order. Coefficients are
Taylor coefficients (derivative divided by i! j! k!), which makes products
plain truncated polynomial multiplication; `derivative` converts back.

`eval_jet` propagates jets bottom-up through an expression AST, so every
partial derivative up to the requested order comes out of one pass, with no
symbolic differentiation and no finite differencing. Unary functions are
applied by composing with their univariate Taylor expansion around the inner
value; that needs the same domain guards as plain evaluation (nonzero
divisors, positive sqrt arguments).
"""

from __future__ import annotations

import math
from typing import Iterable

from .errors import EvaluationError
from .expressions import (
    Add, Call, Const, Div, Expr, Mul, Neg, Num, Pow, Sub, Var, to_source,
)

MAX_ORDER = 3

_AXES = {"x": 0, "y": 1, "z": 2}


def _indices(order: int) -> list[tuple[int, int, int]]:
    return [
        (i, j, k)
        for total in range(order + 1)
        for i in range(total, -1, -1)
        for j in range(total - i, -1, -1)
        for k in (total - i - j,)
    ]


_INDICES = {order: _indices(order) for order in range(MAX_ORDER + 1)}

# For each order, every way of splitting each multi-index into two factors.
_SPLITS: dict[int, list[tuple[tuple, tuple, tuple]]] = {}
for _order in range(MAX_ORDER + 1):
    rows = []
    for gamma in _INDICES[_order]:
        gi, gj, gk = gamma
        for ai in range(gi + 1):
            for aj in range(gj + 1):
                for ak in range(gk + 1):
                    rows.append((gamma, (ai, aj, ak), (gi - ai, gj - aj, gk - ak)))
    _SPLITS[_order] = rows


class Jet3:
    """Truncated Taylor expansion at a point, up to order <= 3."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: dict[tuple[int, int, int], float]):
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def constant(cls, value: float, order: int) -> "Jet3":
        coeffs = {alpha: 0.0 for alpha in _INDICES[order]}
        coeffs[(0, 0, 0)] = float(value)
        return cls(order, coeffs)

    @classmethod
    def coordinate(cls, axis: int, value: float, order: int) -> "Jet3":
        jet = cls.constant(value, order)
        if order >= 1:
            unit = tuple(1 if a == axis else 0 for a in range(3))
            jet.coeffs[unit] = 1.0
        return jet

    @property
    def value(self) -> float:
        return self.coeffs[(0, 0, 0)]

    def derivative(self, alpha: tuple[int, int, int]) -> float:
        """Partial derivative d^|alpha| / dx^i dy^j dz^k at the point."""
        i, j, k = alpha
        factorial = math.factorial(i) * math.factorial(j) * math.factorial(k)
        return self.coeffs[alpha] * factorial

    def partial(self, axis: int) -> "Jet3":
        """Jet of the partial derivative along an axis, one order lower."""
        if self.order == 0:
            raise ValueError("cannot lower an order-0 jet")
        out = {}
        for alpha in _INDICES[self.order - 1]:
            lifted = list(alpha)
            lifted[axis] += 1
            out[alpha] = self.coeffs[tuple(lifted)] * lifted[axis]
        return Jet3(self.order - 1, out)

    def _binary(self, other: "Jet3", op) -> "Jet3":
        assert self.order == other.order
        a, b = self.coeffs, other.coeffs
        return Jet3(self.order, {k: op(a[k], b[k]) for k in a})

    def __add__(self, other: "Jet3") -> "Jet3":
        return self._binary(other, lambda u, v: u + v)

    def __sub__(self, other: "Jet3") -> "Jet3":
        return self._binary(other, lambda u, v: u - v)

    def __neg__(self) -> "Jet3":
        return Jet3(self.order, {k: -v for k, v in self.coeffs.items()})

    def __mul__(self, other: "Jet3") -> "Jet3":
        assert self.order == other.order
        a, b = self.coeffs, other.coeffs
        out = {alpha: 0.0 for alpha in _INDICES[self.order]}
        for gamma, left, right in _SPLITS[self.order]:
            out[gamma] += a[left] * b[right]
        return Jet3(self.order, out)

    def scaled(self, factor: float) -> "Jet3":
        return Jet3(self.order, {k: v * factor for k, v in self.coeffs.items()})

    def compose(self, derivs: Iterable[float]) -> "Jet3":
        """Apply a univariate function given its derivatives at self.value.

        derivs = (f(u0), f'(u0), ..., f^(order)(u0)). Evaluated by Horner's
        scheme in w = self - u0, which is nilpotent under truncation.
        """
        taylor = [d / math.factorial(k) for k, d in enumerate(derivs)]
        w = Jet3(self.order, dict(self.coeffs))
        w.coeffs[(0, 0, 0)] = 0.0
        result = Jet3.constant(taylor[-1], self.order)
        for c in reversed(taylor[:-1]):
            result = result * w
            result.coeffs[(0, 0, 0)] += c
        return result

    def reciprocal(self) -> "Jet3":
        u0 = self.value
        derivs = [1.0 / u0, -1.0 / u0**2, 2.0 / u0**3, -6.0 / u0**4]
        return self.compose(derivs[: self.order + 1])

    def __truediv__(self, other: "Jet3") -> "Jet3":
        return self * other.reciprocal()

    def intpow(self, exponent: int) -> "Jet3":
        if exponent < 0:
            return self.reciprocal().intpow(-exponent)
        result = Jet3.constant(1.0, self.order)
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exp(self) -> "Jet3":
        e = math.exp(self.value)
        return self.compose([e] * (self.order + 1))

    def sqrt(self) -> "Jet3":
        u0 = self.value
        s = math.sqrt(u0)
        derivs = [s, 0.5 / s, -0.25 / (s * u0), 0.375 / (s * u0 * u0)]
        return self.compose(derivs[: self.order + 1])

    def is_finite(self) -> bool:
        return all(math.isfinite(v) for v in self.coeffs.values())


def eval_jet(e: Expr, point, order: int = MAX_ORDER) -> Jet3:
    """Value and all partial derivatives of `e` at `point`, up to `order`.

    Domain violations (zero divisor, non-positive sqrt argument, overflow)
    raise EvaluationError naming the offending subexpression.
    """
    if not 0 <= order <= MAX_ORDER:
        raise ValueError(f"order must be in 0..{MAX_ORDER}")
    px, py, pz = (float(c) for c in point)
    pt = (px, py, pz)

    def ev(node: Expr) -> Jet3:
        if isinstance(node, (Num, Const)):
            return Jet3.constant(float(node.value), order)
        if isinstance(node, Var):
            axis = _AXES[node.name]
            return Jet3.coordinate(axis, pt[axis], order)
        if isinstance(node, Add):
            return ev(node.left) + ev(node.right)
        if isinstance(node, Sub):
            return ev(node.left) - ev(node.right)
        if isinstance(node, Neg):
            return -ev(node.arg)
        if isinstance(node, Mul):
            out = ev(node.left) * ev(node.right)
            if not out.is_finite():
                raise EvaluationError("non-finite value", to_source(node), pt)
            return out
        if isinstance(node, Div):
            denominator = ev(node.right)
            if denominator.value == 0.0:
                raise EvaluationError("division by zero", to_source(node), pt)
            out = ev(node.left) / denominator
            if not out.is_finite():
                raise EvaluationError("non-finite value", to_source(node), pt)
            return out
        if isinstance(node, Pow):
            base = ev(node.base)
            if node.exponent < 0 and base.value == 0.0:
                raise EvaluationError("division by zero", to_source(node), pt)
            out = base.intpow(node.exponent)
            if not out.is_finite():
                raise EvaluationError("non-finite value", to_source(node), pt)
            return out
        if isinstance(node, Call):
            arg = ev(node.arg)
            if node.func == "sqrt":
                if arg.value <= 0.0:
                    raise EvaluationError(
                        "sqrt of a non-positive argument", to_source(node), pt
                    )
                return arg.sqrt()
            out = arg.exp()
            if not out.is_finite():
                raise EvaluationError("non-finite value", to_source(node), pt)
            return out
        raise TypeError(f"cannot evaluate {type(node).__name__}")

    return ev(e)
