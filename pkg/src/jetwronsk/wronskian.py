"""Wronskians ``W(f_0, ..., f_k) = det(d^[p] f_j)`` and their transformation laws."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .bounds import kprime
from .jets import (JetContext, JetPoint, JetPolynomial, CurveGerm, evaluate,
                   jet_derivative, jet_of_curve)
from .linalg import bareiss_det, determinant
from .polynomial import Polynomial, Scalar
from .reparam import Reparam, act


@dataclass(frozen=True)
class WronskianSpec:
    context: JetContext
    inputs: tuple

    def __post_init__(self):
        ctx = self.context
        inputs = tuple(ctx.lift(f).poly for f in self.inputs)
        object.__setattr__(self, "inputs", inputs)
        if len(inputs) != ctx.k + 1:
            raise ValueError(f"a Wronskian at k={ctx.k} takes {ctx.k + 1} functions, got {len(inputs)}")
        base = set(ctx.base_variables)
        for f in inputs:
            extra = set(f.used_variables()) - base
            if extra:
                raise ValueError(f"Wronskian inputs must be base polynomials; found {sorted(extra)}")

    @property
    def weight(self) -> int:
        return kprime(self.context.k)

    def scaled(self, s) -> "WronskianSpec":
        s = self.context.lift(s).poly
        return WronskianSpec(self.context, tuple(s * f for f in self.inputs))


def derivative_matrix(spec: WronskianSpec) -> list:
    """Rows ``p = 0..k``, columns ``j``: ``d^[p] f_j`` as polynomials."""
    ctx = spec.context
    return [[jet_derivative(JetPolynomial(ctx, f), p).poly for f in spec.inputs]
            for p in range(ctx.k + 1)]


def wronskian(spec: WronskianSpec) -> JetPolynomial:
    return JetPolynomial(spec.context, determinant(derivative_matrix(spec)))


def wronskian_at(spec: WronskianSpec, w: JetPoint) -> Scalar:
    """The value of the Wronskian at ``w``; evaluates entries first."""
    if w.context != spec.context:
        raise ValueError("jet point belongs to another context")
    rows = [[f.evaluate(w.values) for f in row] for row in derivative_matrix(spec)]
    return bareiss_det(rows)


def invariance_check(spec: WronskianSpec, phi: Reparam, w: JetPoint) -> bool:
    """``W(phi . w) == phi'(0)^k' * W(w)``."""
    return wronskian_at(spec, act(phi, w)) == phi.a1 ** spec.weight * wronskian_at(spec, w)


def invariance_exponents(spec: WronskianSpec, w: JetPoint, lam=2, search: int = 10) -> list:
    """Exponents ``e <= search`` with ``W(lam t . w) == lam^e W(w)``."""
    k = spec.context.k
    phi = Reparam(k, (lam,) + (0,) * (k - 1))
    lhs = wronskian_at(spec, act(phi, w))
    rhs = wronskian_at(spec, w)
    return [e for e in range(search + 1) if lhs == lam ** e * rhs]


def multiplicativity_check(s, spec: WronskianSpec) -> bool:
    """``W(s f_0, ..., s f_k) == s^(k+1) W(f_0, ..., f_k)`` as polynomials."""
    ctx = spec.context
    s = ctx.lift(s)
    return wronskian(spec.scaled(s)) == s ** (ctx.k + 1) * wronskian(spec)


def cocycle_check(g, spec: WronskianSpec) -> bool:
    """Change of trivialization by the transition function ``g``.

    The sections ``s_j`` read in the second chart are ``g`` times their first
    reading, so the local Wronskians differ by ``g^(k+1)``; algebraically this
    is the multiplicativity law.
    """
    return multiplicativity_check(g, spec)


def nondegeneracy_witness(context: JetContext) -> tuple[WronskianSpec, JetPoint, Scalar]:
    """``W(1, z1, z1^2/2!, ..., z1^k/k!)`` at the jet of ``t -> (t, 0, ..., 0)``."""
    k, n = context.k, context.n
    z1 = Polynomial.variable("z1", context.variables)
    inputs = tuple((z1 ** j).scale(Fraction(1, factorial(j))) for j in range(k + 1))
    spec = WronskianSpec(context, inputs)
    gamma = CurveGerm.from_coefficients(context, [[0, 1][:k + 1]] + [[0]] * (n - 1))
    w = jet_of_curve(gamma)
    return spec, w, evaluate(wronskian(spec), w)
