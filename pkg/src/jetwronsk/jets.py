"""Jet coordinates, the total jet-derivative operators and jets of curves.

A :class:`JetContext` fixes ``n`` base variables ``z1..zn`` and a jet order
``k``; its variable universe is ``{z_i^(m)}`` written ``zi`` followed by ``m``
primes.  Points of the jet space store actual derivatives ``gamma_i^(m)(0)``,
not Taylor coefficients.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from .errors import OrderOverflow
from .polynomial import Polynomial, Scalar, to_rational, var_key
from .series import TruncatedSeries, compose_polynomial


def jet_name(i: int, m: int) -> str:
    return f"z{i}" + "'" * m


@dataclass(frozen=True)
class JetContext:
    n: int
    k: int

    def __post_init__(self):
        if self.n < 1 or self.k < 0:
            raise ValueError(f"need n >= 1 and k >= 0, got n={self.n}, k={self.k}")

    @property
    def base_variables(self) -> tuple:
        return tuple(f"z{i}" for i in range(1, self.n + 1))

    @cached_property
    def variables(self) -> tuple:
        names = [jet_name(i, m) for i in range(1, self.n + 1) for m in range(self.k + 1)]
        return tuple(sorted(names, key=var_key))

    @cached_property
    def index(self) -> dict:
        return {v: j for j, v in enumerate(self.variables)}

    @cached_property
    def _next_order(self) -> dict:
        # position of z_i^(m) -> position of z_i^(m+1)
        return {self.index[jet_name(i, m)]: self.index[jet_name(i, m + 1)]
                for i in range(1, self.n + 1) for m in range(self.k)}

    def coordinate(self, name: str) -> tuple[int, int]:
        """``(i, m)`` for the name of ``z_i^(m)``."""
        base = name.rstrip("'")
        m = len(name) - len(base)
        if not base.startswith("z") or not base[1:].isdigit():
            raise ValueError(f"{name!r} is not a jet coordinate")
        i = int(base[1:])
        if not (1 <= i <= self.n and m <= self.k):
            raise ValueError(f"{name!r} is outside the context n={self.n}, k={self.k}")
        return i, m

    def lift(self, f: Polynomial) -> "JetPolynomial":
        """View a polynomial (in jet coordinates of this context) as a jet polynomial."""
        if isinstance(f, JetPolynomial):
            if f.context != self:
                raise ValueError("jet polynomial belongs to another context")
            return f
        if not isinstance(f, Polynomial):
            f = Polynomial.constant(f)
        for v in f.used_variables():
            self.coordinate(v)
        return JetPolynomial(self, f.with_variables(self.variables))

    def var(self, i: int, m: int = 0) -> "JetPolynomial":
        return JetPolynomial(self, Polynomial.variable(jet_name(i, m), self.variables))

    def constant(self, value) -> "JetPolynomial":
        return JetPolynomial(self, Polynomial.constant(value, self.variables))

    def extended(self, k: int) -> "JetContext":
        return JetContext(self.n, k)


@dataclass(frozen=True, eq=False)
class JetPolynomial:
    """A polynomial over the full variable universe of ``context``."""

    context: JetContext
    poly: Polynomial

    def __post_init__(self):
        if self.poly.variables != self.context.variables:
            object.__setattr__(self, "poly", self.poly.with_variables(self.context.variables))

    def _other(self, other):
        if isinstance(other, JetPolynomial):
            if other.context != self.context:
                raise ValueError("jet polynomials from different contexts")
            return other.poly
        if isinstance(other, Polynomial):
            return self.context.lift(other).poly
        if isinstance(other, (int, Fraction)):
            return other
        return None

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else JetPolynomial(self.context, self.poly + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else JetPolynomial(self.context, self.poly - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else JetPolynomial(self.context, o - self.poly)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else JetPolynomial(self.context, self.poly * o)

    __rmul__ = __mul__

    def __neg__(self):
        return JetPolynomial(self.context, -self.poly)

    def __pow__(self, e: int):
        return JetPolynomial(self.context, self.poly ** e)

    def __bool__(self):
        return bool(self.poly)

    def __eq__(self, other):
        o = self._other(other) if isinstance(other, (JetPolynomial, Polynomial, int, Fraction)) else None
        if o is None:
            return NotImplemented
        return self.poly == o

    def __hash__(self):
        return hash((self.context, self.poly))

    def divide_exact(self, den) -> "JetPolynomial":
        return JetPolynomial(self.context, self.poly.divide_exact(self._other(den)))

    def max_order(self) -> int:
        """Highest derivative order that occurs; -1 for constants."""
        orders = [self.context.coordinate(v)[1] for v in self.poly.used_variables()]
        return max(orders, default=-1)

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        return f"JetPolynomial({str(self.poly)!r}, n={self.context.n}, k={self.context.k})"


def _total_derivative(ctx: JetContext, poly: Polynomial) -> Polynomial:
    names = ctx.variables
    shift = ctx._next_order
    out: dict = {}
    for exps, c in poly.terms.items():
        for j, e in enumerate(exps):
            if not e:
                continue
            target = shift.get(j)
            if target is None:
                raise OrderOverflow(f"derivative of {names[j]} needs order {ctx.k + 1}")
            new = list(exps)
            new[j] -= 1
            new[target] += 1
            key = tuple(new)
            out[key] = out.get(key, 0) + c * e
    return Polynomial._raw(poly.variables, {e: to_rational(c) for e, c in out.items() if c})


def jet_derivative(f, p: int, context: JetContext | None = None) -> JetPolynomial:
    """``d^[p] f``: the p-th total derivative along curves.

    Computed by iterating ``D g = sum_{i,m} dg/dz_i^(m) * z_i^(m+1)``, which on
    base polynomials is the inductive formula for ``d^[p]``.  ``f`` may be a
    base :class:`Polynomial` if ``context`` is given.
    """
    if not isinstance(f, JetPolynomial):
        if context is None:
            raise TypeError("a context is required for a plain polynomial")
        f = context.lift(f)
    ctx = f.context
    if p < 0:
        raise ValueError("derivative order must be non-negative")
    top = f.max_order()
    if top >= 0 and top + p > ctx.k:
        raise OrderOverflow(
            f"d^[{p}] of a polynomial of order {top} needs jet order {top + p} > k={ctx.k}")
    poly = f.poly
    for _ in range(p):
        poly = _total_derivative(ctx, poly)
    return JetPolynomial(ctx, poly)


@dataclass(frozen=True)
class CurveGerm:
    context: JetContext
    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != self.context.n:
            raise ValueError(f"need {self.context.n} components, got {len(comps)}")
        orders = {c.order for c in comps}
        if len(orders) != 1:
            raise ValueError("all components must share one truncation order")
        if self.order < self.context.k:
            raise ValueError(f"truncation order {self.order} is below the jet order {self.context.k}")

    @property
    def order(self) -> int:
        return self.components[0].order

    @classmethod
    def from_coefficients(cls, context: JetContext, rows: Sequence[Sequence], order: int | None = None):
        order = context.k if order is None else order
        return cls(context, tuple(TruncatedSeries(r, order) for r in rows))

    def base_point(self) -> tuple:
        return tuple(c.coeffs[0] for c in self.components)

    def as_mapping(self) -> dict:
        return {f"z{i}": c for i, c in enumerate(self.components, start=1)}

    def compose(self, f: Polynomial) -> TruncatedSeries:
        """The series ``f(gamma(t))``."""
        return compose_polynomial(f, self.as_mapping())

    def reparametrize(self, phi_series: TruncatedSeries) -> "CurveGerm":
        return CurveGerm(self.context, tuple(c.compose(phi_series) for c in self.components))


@dataclass(frozen=True)
class JetPoint:
    """Exact values for every coordinate of a context, in context order."""

    context: JetContext
    values: tuple

    def __post_init__(self):
        vals = tuple(to_rational(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != len(self.context.variables):
            raise ValueError("a jet point needs a value for every coordinate")

    @classmethod
    def from_mapping(cls, context: JetContext, mapping: Mapping[str, object]) -> "JetPoint":
        names = context.variables
        extra = set(mapping) - set(names)
        missing = [v for v in names if v not in mapping]
        if extra or missing:
            raise ValueError(f"jet point keys mismatch: missing {missing}, unexpected {sorted(extra)}")
        return cls(context, tuple(mapping[v] for v in names))

    @classmethod
    def from_derivatives(cls, context: JetContext, rows: Sequence[Sequence]) -> "JetPoint":
        """``rows[i-1][m]`` is the value of ``z_i^(m)``."""
        return cls.from_mapping(context, {jet_name(i, m): rows[i - 1][m]
                                          for i in range(1, context.n + 1)
                                          for m in range(context.k + 1)})

    def __getitem__(self, name: str) -> Scalar:
        return self.values[self.context.index[name]]

    def value(self, i: int, m: int) -> Scalar:
        return self[jet_name(i, m)]

    def as_mapping(self) -> dict:
        return dict(zip(self.context.variables, self.values))

    def base_point(self) -> tuple:
        return tuple(self.value(i, 0) for i in range(1, self.context.n + 1))

    def curve(self, order: int | None = None) -> CurveGerm:
        """The polynomial curve whose k-jet is this point."""
        order = self.context.k if order is None else order
        rows = [[Fraction(self.value(i, m), factorial(m)) for m in range(self.context.k + 1)]
                for i in range(1, self.context.n + 1)]
        return CurveGerm.from_coefficients(self.context, rows, order)

    def to_json(self) -> dict:
        return {v: str(x) for v, x in zip(self.context.variables, self.values)}

    @classmethod
    def from_json(cls, context: JetContext, data) -> "JetPoint":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_mapping(context, {k: Fraction(v) for k, v in data.items()})


def jet_of_curve(gamma: CurveGerm) -> JetPoint:
    ctx = gamma.context
    rows = [[c.derivative_at_zero(m) for m in range(ctx.k + 1)] for c in gamma.components]
    return JetPoint.from_derivatives(ctx, rows)


def evaluate(f, w: JetPoint) -> Scalar:
    if isinstance(f, JetPolynomial):
        if f.context != w.context:
            raise ValueError("jet polynomial and jet point have different contexts")
        return f.poly.evaluate(w.values)
    if isinstance(f, Polynomial):
        return w.context.lift(f).poly.evaluate(w.values)
    return to_rational(f)


def leibniz_check(f, g, p: int, context: JetContext | None = None) -> bool:
    """Generalized Leibniz rule ``d^[p](fg) = sum_i C(p,i) d^[i]f d^[p-i]g``."""
    ctx = context or (f.context if isinstance(f, JetPolynomial) else g.context)
    f, g = ctx.lift(f), ctx.lift(g)
    lhs = jet_derivative(f * g, p)
    rhs = ctx.constant(0)
    for i in range(p + 1):
        rhs = rhs + jet_derivative(f, i) * jet_derivative(g, p - i) * comb(p, i)
    return lhs == rhs
