"""Integer bookkeeping: dimensions, index counts, degree thresholds and the effective degree bound."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from math import comb, gcd

from .errors import GcdError, TooSmall


def kprime(k: int) -> int:
    """The Wronskian weight ``k(k+1)/2``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return k * (k + 1) // 2


def jet_dim(n: int, k: int) -> int:
    """Dimension ``n + k(n-1)`` of the k-th jet tower over an n-fold."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    return n + k * (n - 1)


def index_counts(N: int, delta: int, N_x: int) -> tuple[int, int]:
    """``(#I, #I_x) = (C(N+delta, delta), C(N_x-1+delta, delta))``."""
    if not 0 <= N_x <= N + 1:
        raise ValueError(f"need 0 <= N_x <= N+1 = {N + 1}")
    if delta < 0:
        raise ValueError("delta must be non-negative")
    local = 1 if delta == 0 else comb(N_x - 1 + delta, delta)
    return comb(N + delta, delta), local


@dataclass(frozen=True)
class ParamSet:
    n: int
    N: int
    k: int
    delta: int
    epsilon: int = 0
    u: int = 1
    v: int = 1
    m_inf: int = 0
    M: int = 0
    R: int = 0

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not isinstance(value, int) or isinstance(value, bool):
                raise TypeError(f"{name} must be an integer")
            if value < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.n < 2 or self.N < self.n:
            raise ValueError(f"need N >= n >= 2, got n={self.n}, N={self.N}")
        if self.u < 1 or self.v < 1:
            raise ValueError("need u, v >= 1")


@dataclass(frozen=True)
class DeltaReport:
    basic: bool
    optimal1: bool
    optimal2: bool
    estimation_margin: int
    optimal1_margin: int
    benoist_margin: int
    strata: tuple  # (#J, dim X_J, dim of the jet stratum)

    def to_json(self) -> dict:
        data = asdict(self)
        data["strata"] = [list(s) for s in self.strata]
        return data


def stratum_dim(n: int, size_J: int) -> int:
    return max(-1, n - size_J)


def delta_conditions(params: ParamSet) -> DeltaReport:
    n, N, k, delta = params.n, params.N, params.k, params.delta
    dim_jets = jet_dim(n, k)
    # the dimension of Z minus dim A; the bound needs it to be negative
    estimation = dim_jets + k - delta - 1
    optimal1 = comb(N - n + delta, delta) - (dim_jets + k)
    strata = []
    for size in range(0, min(n, N + 1) + 1):
        d = stratum_dim(n, size)
        if d >= 0:
            # the jet stratum over X_J has fibres of dimension k(n-1)
            strata.append((size, d, d + k * (n - 1)))
    # codimension at least delta+1 against the largest stratum
    benoist = delta + 1 - max(s[2] for s in strata)
    return DeltaReport(
        basic=delta >= n * (k + 1),
        optimal1=optimal1 > 0,
        optimal2=benoist > 0,
        estimation_margin=estimation,
        optimal1_margin=optimal1,
        benoist_margin=benoist,
        strata=tuple(strata),
    )


def r_threshold(v: int, u: int, M: int, k: int, epsilon: int, delta: int) -> int:
    """``ceil((M(k+1)(u eps + k v delta) + 1) / v)``."""
    if v < 1:
        raise ValueError("v must be at least 1")
    num = M * (k + 1) * (u * epsilon + k * v * delta) + 1
    return -(-num // v)


def R_from_M(params: ParamSet) -> int:
    """The largest threshold over the window ``m_inf <= eps < m_inf + v delta``."""
    p = params
    window = range(p.m_inf, p.m_inf + p.v * p.delta)
    return max((r_threshold(p.v, p.u, p.M, p.k, e, p.delta) for e in window), default=0)


def pullback_twist(params: ParamSet, r: int, m: int | None = None) -> int:
    """Exponent ``m(k+1)(u eps + k v delta) - v r`` of the base twist, with ``m = M`` by default."""
    p = params
    m = p.M if m is None else m
    return m * (p.k + 1) * (p.u * p.epsilon + p.k * p.v * p.delta) - p.v * r


@dataclass(frozen=True)
class DegreeDecomposition:
    d: int
    epsilon: int
    r: int

    def validate(self, params: ParamSet) -> list[str]:
        """Names of violated invariants (empty when valid)."""
        p = params
        vd = p.v * p.delta
        bad = []
        if self.d != p.u * self.epsilon + (self.r + p.k) * vd:
            bad.append("d = u*eps + (r+k)*v*delta")
        if not p.m_inf <= self.epsilon < p.m_inf + vd:
            bad.append("m_inf <= eps < m_inf + v*delta")
        if self.r < p.R:
            bad.append("r >= R")
        return bad


def degree_threshold(params: ParamSet) -> int:
    """``d_0 = u(m_inf + v delta) + (R + k) v delta``."""
    p = params
    vd = p.v * p.delta
    return p.u * (p.m_inf + vd) + (p.R + p.k) * vd


def decompose_degree(params: ParamSet, d: int) -> DegreeDecomposition:
    """Write ``d = u eps + (r+k) v delta`` with ``eps`` in its window and ``r >= R``."""
    p = params
    vd = p.v * p.delta
    if vd == 0:
        raise ValueError("need v*delta >= 1")
    if gcd(p.u, vd) != 1:
        raise GcdError(f"gcd(u, v*delta) = gcd({p.u}, {vd}) = {gcd(p.u, vd)} != 1")
    d0 = degree_threshold(p)
    if d < d0:
        raise TooSmall(f"d = {d} is below d_0 = {d0}")
    target = d * pow(p.u, -1, vd) % vd  # eps must be congruent to this
    eps = p.m_inf + (target - p.m_inf) % vd
    t, rem = divmod(d - p.u * eps, vd)
    assert rem == 0
    return DegreeDecomposition(d, eps, t - p.k)


def deng_bound(n: int) -> tuple[int, int]:
    """``(d_0, (n+1)^(2n+6))`` for the effective degree bound; asserts ``d_0 <= cap``."""
    if n < 2:
        raise ValueError("need n >= 2")
    d0 = n ** (n + 1) * (n + 1) ** (n + 2) * (n ** 3 + 2 * n ** 2 + 2 * n - 1) + n ** 3 + 3 * n ** 2 + 3 * n
    cap = (n + 1) ** (2 * n + 6)
    if d0 > cap:
        raise AssertionError(f"d_0 = {d0} exceeds (n+1)^(2n+6) = {cap}")
    return d0, cap


def hypotheses_check(params: ParamSet) -> dict:
    p = params
    vd = p.v * p.delta
    return {
        "N >= n >= 2": p.N >= p.n >= 2,
        "k >= N-1": p.k >= p.N - 1,
        "eps >= m_inf": p.epsilon >= p.m_inf,
        "delta >= n(k+1)": p.delta >= p.n * (p.k + 1),
        "gcd(u, v*delta) = 1": vd > 0 and gcd(p.u, vd) == 1,
    }
