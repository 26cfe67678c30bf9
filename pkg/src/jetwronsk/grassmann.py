"""Plücker coordinates of the span of jet derivatives, the incidence test and the frame determinant."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import prod
from typing import Mapping, Sequence

from .errors import FrameDegenerate
from .family import FamilySpec, format_index, reduced_jet_derivative, stratum_data
from .jets import CurveGerm, JetPoint, JetPolynomial, evaluate, jet_derivative, jet_of_curve
from .linalg import bareiss_det, rank, solve_cramer
from .polynomial import Polynomial, Scalar, to_rational


def _label(x) -> str:
    return format_index(x) if isinstance(x, tuple) else str(x)


@dataclass(frozen=True)
class PluckerVector:
    """Maximal minors of a ``(k+1) x m`` matrix, keyed by column-label tuples."""

    ambient: tuple
    coords: Mapping

    def __post_init__(self):
        coords = {tuple(key): to_rational(v) for key, v in self.coords.items()}
        object.__setattr__(self, "ambient", tuple(self.ambient))
        object.__setattr__(self, "coords", coords)

    @property
    def rank(self) -> int:
        """The ``k+1`` of the subspace (length of each key)."""
        return len(next(iter(self.coords))) if self.coords else 0

    def keys(self) -> list:
        return list(combinations(self.ambient, self.rank))

    def __getitem__(self, key) -> Scalar:
        return self.coords.get(tuple(key), 0)

    def is_zero(self) -> bool:
        return not any(self.coords.values())

    def normalized(self) -> "PluckerVector":
        """Scaled so that the first non-zero coordinate (in key order) is 1."""
        lead = next((self[key] for key in self.keys() if self[key]), None)
        if lead is None:
            return self
        return PluckerVector(self.ambient, {key: Fraction(v) / lead for key, v in self.coords.items()})

    def same_point(self, other: "PluckerVector") -> bool:
        """Equality modulo a non-zero scalar."""
        if self.ambient != other.ambient or self.rank != other.rank:
            return False
        a, b = self.normalized(), other.normalized()
        return all(a[key] == b[key] for key in self.keys())

    def signed(self, cols: Sequence) -> Scalar:
        """``p`` at an arbitrary ordered tuple: alternating, zero on repeats."""
        if len(set(cols)) != len(cols):
            return 0
        order = {c: i for i, c in enumerate(self.ambient)}
        pos = [order[c] for c in cols]
        inversions = sum(1 for i in range(len(pos)) for j in range(i + 1, len(pos)) if pos[i] > pos[j])
        value = self[tuple(sorted(cols, key=order.__getitem__))]
        return -value if inversions % 2 else value

    def to_json(self) -> dict:
        return {"(" + ",".join(_label(c) for c in key) + ")": str(self[key]) for key in self.keys()}


def plucker_of(matrix: Sequence[Sequence], ambient: Sequence | None = None) -> PluckerVector | None:
    """All maximal minors of ``matrix``, or ``None`` when they all vanish (rank deficient)."""
    rows = [[to_rational(x) for x in row] for row in matrix]
    if not rows:
        raise ValueError("empty matrix")
    m = len(rows[0])
    ambient = tuple(range(m)) if ambient is None else tuple(ambient)
    if len(ambient) != m or len(set(ambient)) != m:
        raise ValueError("ambient labels must be distinct, one per column")
    if len(rows) > m:
        return None
    coords = {}
    for cols in combinations(range(m), len(rows)):
        coords[tuple(ambient[c] for c in cols)] = bareiss_det([[row[c] for c in cols] for row in rows])
    pv = PluckerVector(ambient, coords)
    return None if pv.is_zero() else pv


def plucker_relations(pv: PluckerVector) -> list:
    """Residuals of every quadratic relation ``sum_l (-1)^l p[A+b_l] p[B-b_l]``.

    ``A`` runs over ``(k)``-subsets and ``B`` over ``(k+2)``-subsets of the
    ambient labels.
    """
    d = pv.rank
    out = []
    for A in combinations(pv.ambient, d - 1):
        for B in combinations(pv.ambient, d + 1):
            total = 0
            for l, b in enumerate(B):
                x = pv.signed(A + (b,))
                if x:
                    y = pv.signed(B[:l] + B[l + 1:])
                    if y:
                        total += -x * y if l % 2 else x * y
            out.append(((A, B), total))
    return out


def satisfies_plucker_relations(pv: PluckerVector) -> bool:
    return all(value == 0 for _, value in plucker_relations(pv))


def phi_matrix(spec: FamilySpec, w: JetPoint, indices: Sequence | None = None) -> list:
    """Entry ``(p, I)`` is ``d^[p]_I(a_I)`` evaluated at ``w``."""
    if w.context != spec.context:
        raise ValueError("jet point belongs to another context")
    indices = spec.indices() if indices is None else list(indices)
    k = spec.k
    rows = [[0] * len(indices) for _ in range(k + 1)]
    for col, I in enumerate(indices):
        if tuple(I) not in spec.a:
            continue
        for p in range(k + 1):
            rows[p][col] = evaluate(reduced_jet_derivative(spec, I, p), w)
    return rows


@dataclass(frozen=True)
class IncidencePoint:
    """A point ``(Delta, [T])`` with ``Delta`` given by its Plücker vector (``None`` if degenerate)."""

    plucker: PluckerVector | None
    T: tuple

    def __post_init__(self):
        T = tuple(to_rational(t) for t in self.T)
        if not any(T):
            raise ValueError("T must not be the zero vector")
        object.__setattr__(self, "T", T)


def form_values(rows: Sequence[Sequence], indices: Sequence, T: Sequence) -> list:
    """Each row read as the degree-delta form ``sum_I row[I] T^I``, evaluated at ``T``."""
    monomials = [prod(t ** e for t, e in zip(T, I)) for I in indices]
    return [sum(c * m for c, m in zip(row, monomials) if c) for row in rows]


def incidence_point(spec: FamilySpec, gamma: CurveGerm) -> tuple[IncidencePoint, list]:
    """The point ``(Phi(a, [gamma]_k), [tau_0^r(x) : ... : tau_N^r(x)])`` and the residuals."""
    w = jet_of_curve(gamma)
    indices = spec.indices()
    rows = phi_matrix(spec, w, indices)
    T = tuple(t ** spec.r for t in spec.tau_at(gamma.base_point()))
    pv = plucker_of(rows, indices) if any(any(row) for row in rows) else None
    return IncidencePoint(pv, T), form_values(rows, indices, T)


def incidence_check(spec: FamilySpec, gamma: CurveGerm) -> bool:
    """All ``k+1`` forms of the span vanish at ``[T]``."""
    if gamma.context != spec.context:
        raise ValueError("germ belongs to another context")
    _, residuals = incidence_point(spec, gamma)
    return not any(residuals)


def jet_values(g: Polynomial, w: JetPoint) -> list:
    """``(d^[0] g(w), ..., d^[k] g(w))`` for a base polynomial ``g``."""
    ctx = w.context
    f = ctx.lift(g)
    return [evaluate(jet_derivative(f, q), w) for q in range(ctx.k + 1)]


def _frame_setup(spec: FamilySpec, I, frame: Sequence, s, w: JetPoint):
    ctx = spec.context
    if len(frame) != ctx.k + 1:
        raise ValueError(f"a frame needs {ctx.k + 1} functions")
    s = spec._base(s)
    frame = [spec._base(b) for b in frame]
    cols = [jet_values(s * b, w) for b in frame]
    G = [[cols[j][q] for j in range(ctx.k + 1)] for q in range(ctx.k + 1)]
    if not bareiss_det(G):
        raise FrameDegenerate("the frame Wronskian vanishes at the jet point")
    tau_rI = evaluate(spec.tau_power(I, spec.r), w)
    if not tau_rI:
        raise ValueError("tau^(rI) vanishes at the base point")
    return ctx, s, frame, G, tau_rI


def _ell(spec: FamilySpec, I, a: Polynomial, G, tau_rI, w: JetPoint) -> list:
    rhs = jet_values(a * spec.tau_power(I, spec.r + spec.k), w)
    return [Fraction(x) / tau_rI for x in solve_cramer(G, rhs)]


def local_frame_coefficients(spec: FamilySpec, I, a, frame: Sequence, s, w: JetPoint) -> list:
    """``(l^0_I(a), ..., l^k_I(a))`` at ``w``.

    ``l^p_I(a)`` is the Wronskian with the p-th frame function ``s b_p``
    replaced by ``a tau^((r+k)I)``, over ``tau^(rI) W(s b_0, ..., s b_k)``.
    """
    _, _, _, G, tau_rI = _frame_setup(spec, I, frame, s, w)
    return _ell(spec, I, spec._base(a), G, tau_rI, w)


def local_frame_determinant(spec: FamilySpec, I, frame: Sequence, s, w: JetPoint) -> tuple:
    """``(det(l^p_I(b_j)), tau^(k(k+1)I)(x) / s(x)^(k+1))``; the two agree."""
    ctx, s, frame, G, tau_rI = _frame_setup(spec, I, frame, s, w)
    L = [_ell(spec, I, b, G, tau_rI, w) for b in frame]
    lhs = bareiss_det([[L[j][p] for j in range(ctx.k + 1)] for p in range(ctx.k + 1)])
    k = ctx.k
    rhs = Fraction(evaluate(spec.tau_power(I, k * (k + 1)), w)) / evaluate(s, w) ** (k + 1)
    return to_rational(lhs), to_rational(rhs)


def monomial_basis(variables: Sequence[str], degree: int, universe: Sequence[str]) -> list:
    """Monomials of total degree ``<= degree`` in ``variables``."""
    out = []
    for d in range(degree + 1):
        for combo in combinations_with_replacement(variables, d):
            exps: dict = {}
            for v in combo:
                exps[v] = exps.get(v, 0) + 1
            out.append(Polynomial.monomial(exps, 1, universe))
    return out


def frame_rank(spec: FamilySpec, I, frame: Sequence, s, w: JetPoint, degree: int | None = None) -> int:
    """Rank of ``a -> (l^0_I(a), ..., l^k_I(a))(w)`` over monomials of degree ``<= degree``."""
    ctx, s, frame, G, tau_rI = _frame_setup(spec, I, frame, s, w)
    degree = ctx.k if degree is None else degree
    basis = monomial_basis(ctx.base_variables, degree, ctx.variables)
    return rank([_ell(spec, I, a, G, tau_rI, w) for a in basis])


def frame_ranks(spec: FamilySpec, frame: Sequence, s, w: JetPoint, degree: int | None = None) -> dict:
    """``frame_rank`` for every ``I`` in the index set at the base point of ``w``."""
    data = stratum_data(spec, w.base_point())
    return {I: frame_rank(spec, I, frame, s, w, degree) for I in data.indices}
