"""Seeded generators of random exact test data."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .family import FamilySpec, assemble_F, multi_indices
from .jets import CurveGerm, JetContext, JetPoint
from .polynomial import Polynomial
from .reparam import Reparam
from .series import TruncatedSeries


def trial_rng(seed, suite: str, i: int) -> random.Random:
    """Independent stream per (seed, suite, trial), so trials can run in any order."""
    return random.Random(f"{seed}:{suite}:{i}")


def rational(rng: random.Random, bound: int = 5, den: int = 3, nonzero: bool = False) -> Fraction | int:
    while True:
        q = rng.randint(1, den)
        x = Fraction(rng.randint(-bound, bound), q)
        if x or not nonzero:
            return x.numerator if x.denominator == 1 else x


def polynomial(rng: random.Random, names: Sequence[str], degree: int = 3, terms: int = 4,
               universe: Sequence[str] | None = None, bound: int = 5, den: int = 1) -> Polynomial:
    """Sum of up to ``terms`` monomials of total degree ``<= degree``."""
    universe = tuple(universe or names)
    acc: dict = {}
    for _ in range(rng.randint(1, terms)):
        exps = dict.fromkeys(names, 0)
        for _ in range(rng.randint(0, degree)):
            exps[rng.choice(names)] += 1
        key = tuple(exps.get(v, 0) for v in universe)
        acc[key] = acc.get(key, 0) + rational(rng, bound, den)
    return Polynomial(universe, acc)


def nonzero_polynomial(rng, names, **kw) -> Polynomial:
    while True:
        p = polynomial(rng, names, **kw)
        if p:
            return p


def series(rng: random.Random, order: int, constant=None, bound: int = 4, den: int = 2) -> TruncatedSeries:
    coeffs = [rational(rng, bound, den) for _ in range(order + 1)]
    if constant is not None:
        coeffs[0] = constant
    return TruncatedSeries(coeffs, order)


def curve_germ(rng: random.Random, context: JetContext, order: int | None = None) -> CurveGerm:
    order = context.k if order is None else order
    return CurveGerm(context, tuple(series(rng, order) for _ in range(context.n)))


def jet_point(rng: random.Random, context: JetContext, bound: int = 4, den: int = 2) -> JetPoint:
    return JetPoint(context, tuple(rational(rng, bound, den) for _ in context.variables))


def reparam(rng: random.Random, k: int, bound: int = 3, den: int = 2) -> Reparam:
    return Reparam(k, (rational(rng, bound, den, nonzero=True),)
                   + tuple(rational(rng, bound, den) for _ in range(k - 1)))


def linear_forms(rng: random.Random, names: Sequence[str], count: int, bound: int = 3) -> list:
    """Generic affine linear forms; the first ``len(names)`` are the coordinates themselves."""
    out = [Polynomial.variable(v, names) for v in names][:count]
    while len(out) < count:
        coeffs = {tuple(1 if w == v else 0 for w in names): rng.randint(-bound, bound) for v in names}
        coeffs[tuple(0 for _ in names)] = rng.randint(-bound, bound)
        p = Polynomial(names, coeffs)
        if p.degree() >= 1:
            out.append(p)
    return out


def family_spec(rng: random.Random, n: int, k: int, delta: int, r: int, N: int | None = None,
                terms: int = 3, a_degree: int = 1) -> FamilySpec:
    """A sparse spec: ``terms`` random indices carry small random coefficients."""
    N = n if N is None else N
    ctx = JetContext(n, k)
    names = ctx.base_variables
    tau = linear_forms(rng, names, N + 1)
    indices = multi_indices(N, delta)
    chosen = rng.sample(indices, min(terms, len(indices)))
    a = {I: nonzero_polynomial(rng, names, degree=a_degree, terms=2, bound=3) for I in chosen}
    return FamilySpec(ctx, N, delta, r, tuple(tau), a)


def point(rng: random.Random, n: int, bound: int = 3) -> tuple:
    return tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, 2)) for _ in range(n))


def place_on_hypersurface(spec: FamilySpec, x: Sequence, rng: random.Random) -> FamilySpec | None:
    """Shift the constant term of one ``a_I`` so that ``F(x) = 0``; ``None`` if impossible."""
    values = spec.tau_at(x)
    e = spec.r + spec.k
    options = [I for I in spec.a if all(v or not i for v, i in zip(values, I))]
    if not options:
        return None
    I0 = rng.choice(options)
    F = assemble_F(spec)
    fx = F.evaluate({v: dict(zip(spec.context.base_variables, x)).get(v, 0) for v in F.variables})
    weight = 1
    for v, i in zip(values, I0):
        weight *= v ** (e * i)
    a = dict(spec.a)
    a[I0] = a[I0] - Fraction(fx) / weight
    return spec.with_coefficients(a)
