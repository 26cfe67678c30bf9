"""Independent sympy-based reference computations used only by the tests."""
from __future__ import annotations

from fractions import Fraction

import sympy as sp

from jetwronsk.polynomial import Polynomial

t = sp.Symbol("t")


def sym_name(name: str) -> str:
    base = name.rstrip("'")
    return f"{base}_{len(name) - len(base)}"


def symbol(name: str) -> sp.Symbol:
    return sp.Symbol(sym_name(name))


def to_sympy(p: Polynomial) -> sp.Expr:
    syms = [symbol(v) for v in p.variables]
    expr = sp.Integer(0)
    for exps, c in p.terms.items():
        term = sp.Rational(Fraction(c).numerator, Fraction(c).denominator)
        for s, e in zip(syms, exps):
            if e:
                term *= s ** e
        expr += term
    return expr


def from_sympy(expr: sp.Expr, universe) -> Polynomial:
    universe = tuple(universe)
    syms = [symbol(v) for v in universe]
    poly = sp.Poly(sp.expand(expr), *syms)
    terms = {}
    for exps, c in poly.terms():
        c = sp.Rational(c)
        terms[tuple(exps)] = Fraction(int(c.p), int(c.q))
    return Polynomial(universe, terms)


def jet_derivative(f: Polynomial, p: int, n: int) -> sp.Expr:
    """``(f o z(t))^(p)`` with ``z_i^(m)(t)`` renamed to plain symbols."""
    funcs = [sp.Function(f"z{i}")(t) for i in range(1, n + 1)]
    expr = to_sympy(f).subs({sp.Symbol(f"z{i}_0"): funcs[i - 1] for i in range(1, n + 1)})
    expr = sp.diff(expr, t, p)
    for m in range(p, 0, -1):
        expr = expr.subs({sp.Derivative(funcs[i - 1], (t, m)): sp.Symbol(f"z{i}_{m}") for i in range(1, n + 1)})
    return sp.expand(expr.subs({funcs[i - 1]: sp.Symbol(f"z{i}_0") for i in range(1, n + 1)}))


def wronskian(fs, n: int, k: int) -> sp.Expr:
    M = sp.Matrix([[jet_derivative(f, p, n) for f in fs] for p in range(k + 1)])
    return sp.expand(M.det(method="berkowitz"))
