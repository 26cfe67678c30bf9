"""Jets of reparametrizations ``t -> a1 t + ... + ak t^k`` and their action."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .jets import JetPoint, JetPolynomial, jet_name
from .polynomial import Polynomial, Scalar, to_rational
from .series import TruncatedSeries


@dataclass(frozen=True)
class Reparam:
    """An element ``phi(t) = a1 t + ... + ak t^k`` of the k-jet group."""

    k: int
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(to_rational(a) for a in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != self.k:
            raise ValueError(f"need {self.k} coefficients a1..ak, got {len(coeffs)}")
        if self.k >= 1 and not coeffs[0]:
            raise ValueError("a1 must be non-zero")

    @classmethod
    def identity(cls, k: int) -> "Reparam":
        return cls(k, (1,) + (0,) * (k - 1)) if k else cls(0, ())

    @classmethod
    def from_series(cls, s: TruncatedSeries) -> "Reparam":
        if s.coeffs[0]:
            raise ValueError("a reparametrization fixes 0")
        return cls(s.order, s.coeffs[1:])

    @classmethod
    def parse(cls, text: str) -> "Reparam":
        """From a comma-separated list ``"a1,a2,...,ak"`` of rationals."""
        parts = [p for p in text.split(",") if p.strip()]
        return cls(len(parts), tuple(Fraction(p.strip()) for p in parts))

    @property
    def a1(self) -> Scalar:
        return self.coeffs[0]

    def series(self, order: int | None = None) -> TruncatedSeries:
        order = self.k if order is None else order
        coeffs = (0,) + self.coeffs
        if order < self.k and any(coeffs[order + 1:]):
            raise ValueError("cannot truncate a reparametrization below its order")
        return TruncatedSeries(coeffs[:order + 1], order)

    def derivatives(self) -> tuple:
        """``(phi'(0), ..., phi^(k)(0))``."""
        return tuple(factorial(j) * a for j, a in enumerate(self.coeffs, start=1))

    def __str__(self):
        return ",".join(str(a) for a in self.coeffs)


def compose_reparam(phi: Reparam, psi: Reparam) -> Reparam:
    """``phi o psi`` modulo ``t^(k+1)``."""
    if phi.k != psi.k:
        raise ValueError("reparametrizations of different orders")
    return Reparam.from_series(phi.series().compose(psi.series()))


def inverse_reparam(phi: Reparam) -> Reparam:
    """The compositional inverse, solved order by order."""
    k = phi.k
    inv = [Fraction(1) / phi.a1]
    for m in range(2, k + 1):
        trial = Reparam(k, tuple(inv) + (0,) * (k - len(inv)))
        c = compose_reparam(phi, trial).coeffs[m - 1]
        # coefficient of t^m in phi(psi) is a1*b_m + (terms in b_1..b_{m-1})
        inv.append(-Fraction(c) / phi.a1)
    return Reparam(k, tuple(inv))


@lru_cache(maxsize=None)
def _bell_table(xs: tuple, n_max: int) -> dict:
    # B_{n,j}(x1, x2, ...) via B_{n,j} = sum_{i=1}^{n-j+1} C(n-1, i-1) x_i B_{n-i, j-1},
    # the recurrence obtained by differentiating the composite once more
    table = {(0, 0): 1}
    for n in range(1, n_max + 1):
        table[(n, 0)] = 0
        for j in range(1, n + 1):
            total = 0
            for i in range(1, n - j + 2):
                prev = table.get((n - i, j - 1), 0)
                if prev:
                    total += comb(n - 1, i - 1) * xs[i - 1] * prev
            table[(n, j)] = to_rational(total)
    return table


def bell_polynomial_value(n: int, j: int, xs: Sequence) -> Scalar:
    """Partial Bell polynomial ``B_{n,j}`` evaluated at ``x1, x2, ...``."""
    if j > n or n < 0 or j < 0:
        return 0
    xs = tuple(to_rational(x) for x in xs)
    if len(xs) < n - j + 1:
        raise ValueError(f"B_{n},{j} needs {n - j + 1} arguments")
    xs = xs + (0,) * max(0, n - len(xs))
    return _bell_table(xs[:max(n, 1)], n)[(n, j)]


def bell_polynomial(n: int, j: int) -> Polynomial:
    """``B_{n,j}`` as a polynomial in ``x1, ..., x_{n-j+1}``."""
    names = [f"x{i}" for i in range(1, max(n, 1) + 1)]
    xs = [Polynomial.variable(v, names) for v in names]
    table = {(0, 0): Polynomial.constant(1, names)}
    for m in range(1, n + 1):
        table[(m, 0)] = Polynomial.zero(names)
        for jj in range(1, m + 1):
            total = Polynomial.zero(names)
            for i in range(1, m - jj + 2):
                prev = table.get((m - i, jj - 1))
                if prev:
                    total = total + xs[i - 1] * prev * comb(m - 1, i - 1)
            table[(m, jj)] = total
    if j > n:
        return Polynomial.zero(names)
    return table[(n, j)]


def faa_di_bruno_coeffs(phi: Reparam, p: int) -> tuple:
    """``(P_{p,1}, ..., P_{p,p})`` with ``P_{p,i} = B_{p,i}(phi'(0), ..., phi^(p-i+1)(0))``.

    These are the coefficients in ``(h o phi)^(p)(0) = sum_i P_{p,i} h^(i)(0)``.
    """
    if not 0 <= p <= phi.k:
        raise ValueError(f"need 0 <= p <= k={phi.k}")
    if p == 0:
        return ()
    xs = phi.derivatives()
    return tuple(bell_polynomial_value(p, i, xs) for i in range(1, p + 1))


def _check_orders(phi: Reparam, k: int) -> None:
    if phi.k != k:
        raise ValueError(f"reparametrization of order {phi.k} acting on {k}-jets")


def act(phi: Reparam, w: JetPoint) -> JetPoint:
    """Right action ``phi . [gamma]_k = [gamma o phi]_k`` in coordinates."""
    ctx = w.context
    _check_orders(phi, ctx.k)
    table = [faa_di_bruno_coeffs(phi, p) for p in range(ctx.k + 1)]
    rows = []
    for i in range(1, ctx.n + 1):
        row = [w.value(i, 0)]
        for p in range(1, ctx.k + 1):
            row.append(sum(c * w.value(i, q) for q, c in enumerate(table[p], start=1)))
        rows.append(row)
    return JetPoint.from_derivatives(ctx, rows)


def act_on_polynomial(phi: Reparam, f: JetPolynomial) -> JetPolynomial:
    """Pull a jet polynomial back along the action.

    Returns ``g`` with ``evaluate(g, w) == evaluate(f, act(phi, w))`` for
    every jet point ``w``; invariance becomes a symbolic identity.
    """
    ctx = f.context
    _check_orders(phi, ctx.k)
    images = {}
    for p in range(1, ctx.k + 1):
        coeffs = faa_di_bruno_coeffs(phi, p)
        for i in range(1, ctx.n + 1):
            img = Polynomial.zero(ctx.variables)
            for q, c in enumerate(coeffs, start=1):
                if c:
                    img = img + Polynomial.variable(jet_name(i, q), ctx.variables).scale(c)
            images[jet_name(i, p)] = img
    return JetPolynomial(ctx, f.poly.substitute(images))
