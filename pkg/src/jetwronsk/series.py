"""Univariate power series in ``t`` truncated at a fixed order."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import TruncationMismatch
from .polynomial import Polynomial, Scalar, to_rational


class TruncatedSeries:
    """Series known modulo ``t^(order+1)``.

    ``coeffs[m]`` is the coefficient of ``t^m``.  Operands of a binary
    operation must carry the same order; nothing is truncated silently.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        coeffs = [to_rational(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        if len(coeffs) > order + 1:
            if any(coeffs[order + 1:]):
                raise ValueError("coefficients given beyond the truncation order")
            coeffs = coeffs[:order + 1]
        coeffs += [0] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = tuple(coeffs)

    @classmethod
    def t(cls, order: int) -> "TruncatedSeries":
        return cls([0, 1], order) if order >= 1 else cls([0], order)

    @classmethod
    def constant(cls, value, order: int) -> "TruncatedSeries":
        return cls([value], order)

    def __getitem__(self, m: int) -> Scalar:
        if not 0 <= m <= self.order:
            raise IndexError(f"coefficient t^{m} is beyond the truncation order {self.order}")
        return self.coeffs[m]

    def _check(self, other: "TruncatedSeries") -> None:
        if other.order != self.order:
            raise TruncationMismatch(f"orders differ: {self.order} vs {other.order}")

    def _lift(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries.constant(other, self.order)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return TruncatedSeries(map(lambda a, b: a + b, self.coeffs, other.coeffs), self.order)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([c * other for c in self.coeffs], self.order)
        other = self._lift(other)
        if other is None:
            return NotImplemented
        K = self.order
        a, b = self.coeffs, other.coeffs
        out = [0] * (K + 1)
        for i, ai in enumerate(a):
            if ai:
                for j in range(K + 1 - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return TruncatedSeries(out, K)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = TruncatedSeries.constant(1, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """``self(inner(t))`` modulo ``t^(order+1)``; ``inner`` must vanish at 0."""
        self._check(inner)
        if inner.coeffs[0]:
            raise ValueError("inner series must have zero constant term")
        result = TruncatedSeries.constant(self.coeffs[-1], self.order)
        for c in reversed(self.coeffs[:-1]):
            result = result * inner + c
        return result

    def derivative_at_zero(self, m: int) -> Scalar:
        """The m-th derivative at 0, i.e. ``m!`` times the t^m coefficient."""
        value = self[m]
        for j in range(2, m + 1):
            value *= j
        return value

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"TruncatedSeries({[str(c) for c in self.coeffs]}, order={self.order})"

    def __str__(self):
        parts = []
        for m, c in enumerate(self.coeffs):
            if c:
                mono = "" if m == 0 else ("t" if m == 1 else f"t^{m}")
                parts.append(str(c) if not mono else (mono if c == 1 else f"{c}*{mono}"))
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(t^{self.order + 1})"


def series_compose(h: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return h.compose(g)


def compose_polynomial(f: Polynomial, curve: Mapping[str, TruncatedSeries]) -> TruncatedSeries:
    """Expand ``f`` along the curve ``{variable: series}``.

    Every used variable of ``f`` must be mapped and all series must share one
    order.
    """
    orders = {s.order for s in curve.values()}
    if len(orders) != 1:
        raise TruncationMismatch("curve components must share one truncation order")
    (K,) = orders
    used = f.used_variables()
    missing = [v for v in used if v not in curve]
    if missing:
        raise ValueError(f"curve does not define {missing}")
    powers = {}
    for v in used:
        idx = f.variables.index(v)
        top = max(e[idx] for e in f.terms)
        table = [TruncatedSeries.constant(1, K)]
        for _ in range(top):
            table.append(table[-1] * curve[v])
        powers[idx] = table
    out = [0] * (K + 1)
    for exps, c in f.terms.items():
        term = None
        for idx, k in enumerate(exps):
            if k:
                term = powers[idx][k] if term is None else term * powers[idx][k]
        if term is None:
            out[0] += c
        else:
            for m, x in enumerate(term.coeffs):
                if x:
                    out[m] += c * x
    return TruncatedSeries(out, K)
