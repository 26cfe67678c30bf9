"""Fermat-type families ``F(a) = sum_I a_I tau^((r+k)I)`` and their local factorization.

A multi-index is a plain tuple ``(i_0, ..., i_N)``; ``tau^I`` means
``prod_j tau_j^(i_j)``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import DivisionFails, IndexSetTooLarge, SingularPoint
from .jets import CurveGerm, JetContext, JetPolynomial, jet_derivative
from .linalg import determinant
from .parsing import parse_polynomial
from .polynomial import Polynomial, Scalar, to_rational
from .series import TruncatedSeries, compose_polynomial
from .wronskian import WronskianSpec, wronskian

DEFAULT_INDEX_LIMIT = 3003


def multi_indices(N: int, delta: int, limit: int | None = None) -> list[tuple]:
    """All ``I = (i_0..i_N)`` with ``|I| = delta``, in lexicographic order."""
    if N < 0 or delta < 0:
        raise ValueError("need N >= 0 and delta >= 0")
    count = comb(N + delta, delta)
    if limit is not None and count > limit:
        raise IndexSetTooLarge(f"#I = C({N + delta},{delta}) = {count} exceeds the limit {limit}")
    out = []
    for combo in combinations_with_replacement(range(N + 1), delta):
        idx = [0] * (N + 1)
        for j in combo:
            idx[j] += 1
        out.append(tuple(idx))
    return sorted(out)


def support(I: Sequence[int]) -> frozenset:
    return frozenset(j for j, e in enumerate(I) if e)


def indices_avoiding(N: int, delta: int, J: Iterable[int]) -> list[tuple]:
    """``I_J``: the indices whose support misses ``J``."""
    J = set(J)
    return [I for I in multi_indices(N, delta) if not support(I) & J]


def format_index(I: Sequence[int]) -> str:
    return "(" + ",".join(str(i) for i in I) + ")"


_INDEX = re.compile(r"^\s*\(?\s*(\d+(?:\s*,\s*\d+)*)\s*,?\s*\)?\s*$")


def parse_index(text: str) -> tuple:
    m = _INDEX.match(text)
    if not m:
        raise ValueError(f"malformed multi-index {text!r}")
    return tuple(int(x) for x in m.group(1).split(","))


@dataclass(frozen=True, eq=False)
class FamilySpec:
    context: JetContext
    N: int
    delta: int
    r: int
    tau: tuple
    a: Mapping = field(default_factory=dict)
    epsilon: int | None = None

    def __post_init__(self):
        ctx = self.context
        if self.N < ctx.n:
            raise ValueError(f"need N >= n, got N={self.N}, n={ctx.n}")
        if self.delta < 0 or self.r < 0:
            raise ValueError("delta and r must be non-negative")
        tau = tuple(self._base(t) for t in self.tau)
        if len(tau) != self.N + 1:
            raise ValueError(f"need N+1 = {self.N + 1} sections tau, got {len(tau)}")
        a = {}
        for I, poly in self.a.items():
            I = tuple(int(i) for i in I)
            if len(I) != self.N + 1 or min(I) < 0 or sum(I) != self.delta:
                raise ValueError(f"multi-index {format_index(I)} is not in the index set (N={self.N}, delta={self.delta})")
            poly = self._base(poly)
            if poly:
                a[I] = poly
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "a", dict(sorted(a.items())))

    def _base(self, f) -> Polynomial:
        ctx = self.context
        if isinstance(f, str):
            f = parse_polynomial(f, ctx.base_variables)
        elif not isinstance(f, Polynomial):
            f = Polynomial.constant(f)
        extra = set(f.used_variables()) - set(ctx.base_variables)
        if extra:
            raise ValueError(f"family data must be base polynomials; found {sorted(extra)}")
        return f.with_variables(ctx.variables)

    @property
    def n(self) -> int:
        return self.context.n

    @property
    def k(self) -> int:
        return self.context.k

    def indices(self, limit: int | None = DEFAULT_INDEX_LIMIT) -> list[tuple]:
        return multi_indices(self.N, self.delta, limit)

    def coefficient(self, I) -> Polynomial:
        return self.a.get(tuple(I), Polynomial.zero(self.context.variables))

    @cached_property
    def _tau_powers(self) -> dict:
        return {}

    def tau_power(self, I, e: int = 1) -> Polynomial:
        """``tau^(e I)``."""
        key = (tuple(I), e)
        cache = self._tau_powers
        if key not in cache:
            out = Polynomial.constant(1, self.context.variables)
            for t, i in zip(self.tau, key[0]):
                if i:
                    out = out * t ** (e * i)
            cache[key] = out
        return cache[key]

    def tau_at(self, x: Sequence) -> tuple:
        """``(tau_0(x), ..., tau_N(x))`` at a base point."""
        point = dict(zip(self.context.base_variables, x))
        return tuple(t.evaluate({v: point.get(v, 0) for v in t.variables}) for t in self.tau)

    def with_coefficients(self, a: Mapping) -> "FamilySpec":
        return FamilySpec(self.context, self.N, self.delta, self.r, self.tau, a, self.epsilon)

    def to_json(self) -> dict:
        data = {
            "n": self.n, "N": self.N, "k": self.k, "delta": self.delta, "r": self.r,
            "tau": [str(t) for t in self.tau],
            "a": {format_index(I): str(p) for I, p in self.a.items()},
        }
        if self.epsilon is not None:
            data["epsilon"] = self.epsilon
        return data

    @classmethod
    def from_json(cls, data) -> "FamilySpec":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            ctx = JetContext(int(data["n"]), int(data["k"]))
            a = {parse_index(key): value for key, value in data.get("a", {}).items()}
            return cls(ctx, int(data["N"]), int(data["delta"]), int(data["r"]),
                       tuple(data["tau"]), a, data.get("epsilon"))
        except KeyError as exc:
            raise ValueError(f"family spec is missing the field {exc.args[0]!r}") from None


def assemble_F(spec: FamilySpec) -> Polynomial:
    e = spec.r + spec.k
    total = Polynomial.zero(spec.context.variables)
    for I, a in spec.a.items():
        total = total + a * spec.tau_power(I, e)
    return total


def _divide_by_tau(spec: FamilySpec, num: Polynomial, I, e: int) -> Polynomial:
    """Exact division of a jet polynomial by ``tau^(eI)``.

    The divisor only involves base variables, and jet polynomials form a free
    module over the base ring with the derivative monomials as a basis, so it
    suffices to divide each base-variable coefficient separately.
    """
    ctx = spec.context
    base = ctx.base_variables
    pos = [ctx.index[v] for v in base]
    groups: dict = {}
    for exps, c in num.terms.items():
        rest = list(exps)
        for j in pos:
            rest[j] = 0
        groups.setdefault(tuple(rest), {})[tuple(exps[j] for j in pos)] = c
    # one factor at a time: many cheap divisions beat one by the full power
    factors = [t.with_variables(base) for t, i in zip(spec.tau, I) for _ in range(e * i)]
    out: dict = {}
    for rest, coeffs in groups.items():
        q = Polynomial(base, coeffs)
        for t in factors:
            q = q.divide_exact(t)
        for exps, c in q.terms.items():
            full = list(rest)
            for j, x in zip(pos, exps):
                full[j] = x
            out[tuple(full)] = c
    return Polynomial(num.variables, out)


def reduced_jet_derivative(spec: FamilySpec, I, p: int, a=None) -> JetPolynomial:
    """``d^[p]_I(a) = d^[p](a tau^((r+k)I)) / tau^(rI)``; ``a`` defaults to ``a_I``."""
    ctx = spec.context
    I = tuple(I)
    if not 0 <= p <= ctx.k:
        raise ValueError(f"need 0 <= p <= k={ctx.k}")
    a = spec.coefficient(I) if a is None else spec._base(a)
    num = jet_derivative(JetPolynomial(ctx, a * spec.tau_power(I, spec.r + ctx.k)), p).poly
    try:
        return JetPolynomial(ctx, _divide_by_tau(spec, num, I, spec.r))
    except DivisionFails:
        raise DivisionFails(f"tau^(r*{format_index(I)}) does not divide d^[{p}](a tau^((r+k)I))") from None


def factorization_check(spec: FamilySpec) -> bool:
    """Every ``d^[p](a_I tau^((r+k)I))`` is divisible by ``tau^(rI)``."""
    try:
        for I in spec.a:
            for p in range(spec.k + 1):
                reduced_jet_derivative(spec, I, p)
    except DivisionFails:
        return False
    return True


def reduced_wronskian(spec: FamilySpec, indices: Sequence) -> JetPolynomial:
    """``W_{I_0..I_k}(a_{I_0}, ..., a_{I_k}) = det(d^[p]_{I_j}(a_{I_j}))``."""
    ctx = spec.context
    if len(indices) != ctx.k + 1:
        raise ValueError(f"need {ctx.k + 1} multi-indices")
    cols = [[reduced_jet_derivative(spec, I, p).poly for p in range(ctx.k + 1)] for I in indices]
    rows = [[cols[j][p] for j in range(ctx.k + 1)] for p in range(ctx.k + 1)]
    return JetPolynomial(ctx, determinant(rows))


def homgluing_check(spec: FamilySpec, indices: Sequence) -> bool:
    """``W(a_{I_j} tau^((r+k)I_j)) == tau^(r sum I_j) W_{I_0..I_k}`` symbolically."""
    ctx = spec.context
    e = spec.r + ctx.k
    sections = [spec.coefficient(I) * spec.tau_power(I, e) for I in indices]
    lhs = wronskian(WronskianSpec(ctx, sections))
    total = tuple(sum(col) for col in zip(*indices))
    rhs = JetPolynomial(ctx, spec.tau_power(total, spec.r)) * reduced_wronskian(spec, indices)
    return lhs == rhs


def distinguished_variable(F: Polynomial, x: Sequence, names: Sequence[str]) -> int:
    """Position of the lowest-index variable with a non-zero partial of ``F`` at ``x``."""
    point = dict(zip(names, x))
    for i, v in enumerate(names):
        dF = F.diff(v)
        if dF.evaluate({u: point.get(u, 0) for u in dF.variables}):
            return i
    raise SingularPoint(f"all first partials of F vanish at {[str(c) for c in x]}")


def germ_in_hypersurface(F: Polynomial, x: Sequence, order: int, context: JetContext | None = None,
                         direction: Sequence | None = None) -> CurveGerm:
    """A curve germ through the smooth point ``x`` of ``F = 0`` with ``F(gamma) = O(t^(order+1))``.

    The lowest-index variable ``z_i`` with ``dF/dz_i(x) != 0`` is solved for
    order by order; every other component is ``x_j + direction_j t``
    (``direction`` defaults to all ones).
    """
    x = tuple(to_rational(c) for c in x)
    n = len(x)
    ctx = context or JetContext(n, order)
    if ctx.n != n:
        raise ValueError(f"base point has {n} coordinates, context expects {ctx.n}")
    if order < ctx.k:
        raise ValueError("germ order must be at least the jet order")
    names = ctx.base_variables
    if not set(F.used_variables()) <= set(names):
        raise ValueError("F must be a polynomial in the base variables")
    F = F.trimmed()
    point = dict(zip(names, x))
    full = {v: point.get(v, 0) for v in F.variables}
    if F.evaluate(full):
        raise ValueError("the base point does not lie on F = 0")
    pivot = distinguished_variable(F, x, names)
    slope = F.diff(names[pivot]).evaluate(full)
    direction = [1] * n if direction is None else [to_rational(c) for c in direction]
    if len(direction) != n:
        raise ValueError(f"direction needs {n} entries")
    rows = [[x[j], direction[j]][:order + 1] if j != pivot else [x[j]] for j in range(n)]
    coeffs = [x[pivot]]
    for m in range(1, order + 1):
        rows[pivot] = coeffs + [0]
        comps = {names[j]: TruncatedSeries(rows[j], order) for j in range(n)}
        err = compose_polynomial(F, comps)[m]
        coeffs.append(to_rational(-Fraction(err) / slope))
    rows[pivot] = coeffs
    return CurveGerm.from_coefficients(ctx, rows, order)


@dataclass(frozen=True)
class StratumData:
    N_x: int
    vanishing: frozenset
    indices: tuple

    @property
    def count(self) -> int:
        return len(self.indices)


def expected_count(N_x: int, delta: int) -> int:
    """``C(N_x - 1 + delta, delta)`` with the empty-product convention at ``delta = 0``."""
    return 1 if delta == 0 else comb(N_x - 1 + delta, delta)


def stratum_data(spec: FamilySpec, x: Sequence) -> StratumData:
    values = spec.tau_at(x)
    J = frozenset(j for j, v in enumerate(values) if not v)
    idx = tuple(indices_avoiding(spec.N, spec.delta, J))
    data = StratumData(spec.N + 1 - len(J), J, idx)
    if data.count != expected_count(data.N_x, spec.delta):
        raise AssertionError(f"#I_x = {data.count} but C(N_x-1+delta, delta) = "
                             f"{expected_count(data.N_x, spec.delta)}")
    return data
