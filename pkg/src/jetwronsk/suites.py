"""Randomized verification suites.

Every trial draws from its own generator seeded by ``(seed, suite, trial)``,
so results do not depend on evaluation order.  A suite tallies named checks
and keeps the inputs of the first few failures as witnesses.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, factorial, gcd
from typing import Callable

from . import randomgen as rg
from .bounds import (ParamSet, decompose_degree, degree_threshold, delta_conditions, deng_bound,
                     index_counts, jet_dim, kprime, pullback_twist, r_threshold)
from .errors import FrameDegenerate, GcdError, SingularPoint, TooSmall
from .family import (FamilySpec, assemble_F, distinguished_variable, factorization_check,
                     germ_in_hypersurface, homgluing_check, multi_indices, reduced_jet_derivative,
                     stratum_data)
from .grassmann import frame_ranks, incidence_check, local_frame_determinant, plucker_of, \
    satisfies_plucker_relations
from .jets import CurveGerm, JetContext, JetPolynomial, evaluate, jet_derivative, jet_of_curve, leibniz_check
from .linalg import bareiss_det, cofactor_det, rank
from .polynomial import Polynomial
from .reparam import Reparam, act, act_on_polynomial, compose_reparam, faa_di_bruno_coeffs, inverse_reparam
from .series import TruncatedSeries
from .wronskian import (WronskianSpec, cocycle_check, derivative_matrix, invariance_check,
                        invariance_exponents, multiplicativity_check, nondegeneracy_witness,
                        wronskian, wronskian_at)

MAX_WITNESSES = 5


@dataclass
class Tally:
    passed: int = 0
    failed: int = 0
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"pass": self.failed == 0, "passed": self.passed, "failed": self.failed,
                "witnesses": self.witnesses}


@dataclass
class SuiteResult:
    suite: str
    seed: object
    trials: int
    checks: dict = field(default_factory=dict)

    def record(self, name: str, ok: bool, witness: Callable[[], dict] | dict | None = None) -> bool:
        tally = self.checks.setdefault(name, Tally())
        if ok:
            tally.passed += 1
        else:
            tally.failed += 1
            if len(tally.witnesses) < MAX_WITNESSES:
                tally.witnesses.append(witness() if callable(witness) else (witness or {}))
        return ok

    @property
    def ok(self) -> bool:
        return all(t.failed == 0 for t in self.checks.values())

    def to_json(self) -> dict:
        return {name: self.checks[name].to_json() for name in sorted(self.checks)}


def _s(x) -> str:
    return str(x)


def _germ_json(gamma: CurveGerm) -> list:
    return [[str(c) for c in comp.coeffs] for comp in gamma.components]


# -- suites ---------------------------------------------------------------

ORACLE_CONTEXTS = [(n, k) for n in (1, 2, 3) for k in (1, 2, 3, 4)]


def oracle_trial(res: SuiteResult, i: int, rng) -> None:
    n, k = ORACLE_CONTEXTS[i % len(ORACLE_CONTEXTS)]
    ctx = JetContext(n, k)
    f = rg.polynomial(rng, ctx.base_variables, degree=3, terms=4, den=2)
    gamma = rg.curve_germ(rng, ctx)
    w = jet_of_curve(gamma)
    along = gamma.compose(f)
    d = ctx.lift(f)
    for p in range(k + 1):
        if p:
            d = jet_derivative(d, 1)
        ok = evaluate(d, w) == factorial(p) * along[p]
        res.record("oracle-equivalence", ok,
                   lambda: {"trial": i, "n": n, "k": k, "p": p, "f": _s(f), "gamma": _germ_json(gamma)})


def leibniz_trial(res: SuiteResult, i: int, rng) -> None:
    n, k = rng.randint(1, 3), rng.randint(1, 3)
    ctx = JetContext(n, k)
    names = ctx.base_variables
    f = rg.polynomial(rng, names, degree=3, terms=3)
    g = rg.polynomial(rng, names, degree=3, terms=3)
    p = rng.randint(0, k)
    wit = lambda: {"trial": i, "n": n, "k": k, "p": p, "f": _s(f), "g": _s(g)}
    res.record("leibniz", leibniz_check(f, g, p, ctx), wit)
    c = rg.rational(rng)
    lin = jet_derivative(f * c + g, p, ctx) == jet_derivative(f, p, ctx) * c + jet_derivative(g, p, ctx)
    res.record("linearity", lin, wit)
    if p:
        res.record("constant-kills", not jet_derivative(Polynomial.constant(c), p, ctx), wit)
    # adding an element of (z - x)^(p+1) does not change d^[p] over x
    x = rg.point(rng, n)
    w = rg.jet_point(rng, ctx)
    w = type(w).from_mapping(ctx, {**w.as_mapping(), **dict(zip(names, x))})
    h = rg.polynomial(rng, names, degree=1, terms=2)
    for _ in range(p + 1):
        j = rng.randrange(n)
        h = h * (Polynomial.variable(names[j], names) - x[j])
    same = evaluate(jet_derivative(f + h, p, ctx), w) == evaluate(jet_derivative(f, p, ctx), w)
    res.record("jet-locality", same, lambda: {**wit(), "h": _s(h), "x": [str(c) for c in x]})


def faa_di_bruno_trial(res: SuiteResult, i: int, rng) -> None:
    k = 1 + i % 4
    phi = rg.reparam(rng, k)
    psi = rg.reparam(rng, k)
    wit = lambda: {"trial": i, "k": k, "phi": str(phi), "psi": str(psi)}
    h = rg.series(rng, k)
    hphi = h.compose(phi.series())
    for p in range(1, k + 1):
        lhs = hphi.derivative_at_zero(p)
        rhs = sum(c * h.derivative_at_zero(q) for q, c in enumerate(faa_di_bruno_coeffs(phi, p), start=1))
        res.record("faa-di-bruno", lhs == rhs, lambda: {**wit(), "h": str(h), "p": p})
        res.record("top-coefficient", faa_di_bruno_coeffs(phi, p)[-1] == phi.a1 ** p, wit)
    n = rng.randint(1, 3)
    ctx = JetContext(n, k)
    gamma = rg.curve_germ(rng, ctx)
    w = jet_of_curve(gamma)
    res.record("action-oracle", act(phi, w) == jet_of_curve(gamma.reparametrize(phi.series())),
               lambda: {**wit(), "gamma": _germ_json(gamma)})
    res.record("right-action", act(psi, act(phi, w)) == act(compose_reparam(phi, psi), w), wit)
    chi = rg.reparam(rng, k)
    ident = Reparam.identity(k)
    group = (compose_reparam(compose_reparam(phi, psi), chi) == compose_reparam(phi, compose_reparam(psi, chi))
             and compose_reparam(ident, phi) == phi == compose_reparam(phi, ident)
             and compose_reparam(phi, inverse_reparam(phi)) == ident)
    res.record("group-axioms", group, lambda: {**wit(), "chi": str(chi)})
    f = JetPolynomial(ctx, rg.polynomial(rng, ctx.variables, degree=3, terms=3))
    res.record("symbolic-action", evaluate(act_on_polynomial(phi, f), w) == evaluate(f, act(phi, w)),
               lambda: {**wit(), "f": _s(f)})


def _wronskian_spec(rng, ctx: JetContext, degree: int, terms: int) -> WronskianSpec:
    names = ctx.base_variables
    return WronskianSpec(ctx, tuple(rg.polynomial(rng, names, degree=degree, terms=terms)
                                    for _ in range(ctx.k + 1)))


def _spec_json(spec: WronskianSpec) -> dict:
    return {"n": spec.context.n, "k": spec.context.k, "f": [str(f.trimmed()) for f in spec.inputs]}


def invariance_trial(res: SuiteResult, i: int, rng) -> None:
    k = 1 + i % 3
    ctx = JetContext(rng.randint(1, 3), k)
    spec = _wronskian_spec(rng, ctx, 3, 3)
    phi = rg.reparam(rng, k)
    w = rg.jet_point(rng, ctx)
    wit = lambda: {"trial": i, **_spec_json(spec), "phi": str(phi), "w": w.to_json()}
    res.record("invariance", invariance_check(spec, phi, w), wit)
    if k <= 2:
        W = wronskian(spec)
        res.record("symbolic-invariance", act_on_polynomial(phi, W) == W * phi.a1 ** spec.weight, wit)
    if wronskian_at(spec, w):
        res.record("weight-exponent", invariance_exponents(spec, w) == [kprime(k)], wit)
    witness_spec, _, _ = nondegeneracy_witness(ctx)
    rows = [[rg.rational(rng) for _ in range(k + 1)] for _ in range(ctx.n)]
    rows[0][1] = rg.rational(rng, nonzero=True)
    w1 = type(w).from_derivatives(ctx, rows)
    res.record("weight-exponent", invariance_exponents(witness_spec, w1) == [kprime(k)],
               lambda: {"trial": i, "n": ctx.n, "k": k, "w": w1.to_json()})


def _alternating_checks(res: SuiteResult, spec: WronskianSpec, rng, wit) -> None:
    ctx = spec.context
    W = wronskian(spec)
    fs = list(spec.inputs)
    if len(fs) >= 2:
        a, b = rng.sample(range(len(fs)), 2)
        swapped = fs[:]
        swapped[a], swapped[b] = swapped[b], swapped[a]
        res.record("alternating", wronskian(WronskianSpec(ctx, swapped)) == -W, wit)
        dup = fs[:]
        dup[b] = dup[a]
        res.record("alternating", not wronskian(WronskianSpec(ctx, dup)), wit)
    g = rg.polynomial(rng, ctx.base_variables, degree=2, terms=2)
    c = rg.rational(rng)
    j = rng.randrange(len(fs))
    mixed, other = fs[:], fs[:]
    mixed[j] = fs[j] + g.with_variables(ctx.variables) * c
    other[j] = g
    lhs = wronskian(WronskianSpec(ctx, mixed))
    res.record("multilinear", lhs == W + wronskian(WronskianSpec(ctx, other)) * c, wit)
    if ctx.k <= 2:
        M = derivative_matrix(spec)
        res.record("determinant-crosscheck", bareiss_det(M) == cofactor_det(M) == W.poly, wit)


def multiplicativity_trial(res: SuiteResult, i: int, rng) -> None:
    k = 1 + i % 3
    ctx = JetContext(rng.randint(1, 3), k)
    spec = _wronskian_spec(rng, ctx, 2, 3)
    s = rg.polynomial(rng, ctx.base_variables, degree=2, terms=2)
    wit = lambda: {"trial": i, **_spec_json(spec), "s": _s(s)}
    res.record("multiplicativity", multiplicativity_check(s, spec), wit)
    _alternating_checks(res, spec, rng, wit)


def cocycle_trial(res: SuiteResult, i: int, rng) -> None:
    k = 1 + i % 3
    ctx = JetContext(rng.randint(1, 3), k)
    names = ctx.base_variables
    spec = _wronskian_spec(rng, ctx, 2, 3)
    g12 = rg.nonzero_polynomial(rng, names, degree=1, terms=2)
    g23 = rg.nonzero_polynomial(rng, names, degree=1, terms=2)
    wit = lambda: {"trial": i, **_spec_json(spec), "g12": _s(g12), "g23": _s(g23)}
    res.record("cocycle", cocycle_check(g12, spec), wit)
    # three charts: readings differ by g12, g23 and g13 = g12 g23
    W3 = wronskian(spec)
    W2 = wronskian(spec.scaled(g23))
    W1 = wronskian(spec.scaled(g12 * g23))
    lift = lambda g: ctx.lift(g) ** (k + 1)
    res.record("cocycle-composite", W1 == lift(g12) * W2 and W2 == lift(g23) * W3
               and W1 == lift(g12 * g23) * W3, wit)
    res.record("constant-unit", wronskian(spec.scaled(Polynomial.constant(2))) == W3 * 2 ** (k + 1), wit)


def _family_json(spec: FamilySpec) -> dict:
    return spec.to_json()


def factorization_trial(res: SuiteResult, i: int, rng) -> None:
    n, k, delta, r = (rng.randint(1, 3) for _ in range(4))
    spec = rg.family_spec(rng, n, k, delta, r)
    wit = lambda: {"trial": i, "spec": _family_json(spec)}
    res.record("divisibility", factorization_check(spec), wit)
    I = rng.choice(sorted(spec.a))
    p = rng.randint(0, k)
    a = rg.polynomial(rng, spec.context.base_variables, degree=1, terms=2)
    b = rg.polynomial(rng, spec.context.base_variables, degree=1, terms=2)
    lin = (reduced_jet_derivative(spec, I, p, a + b)
           == reduced_jet_derivative(spec, I, p, a) + reduced_jet_derivative(spec, I, p, b))
    res.record("linearity", lin, lambda: {**wit(), "I": list(I), "p": p, "a": _s(a), "b": _s(b)})
    p0 = reduced_jet_derivative(spec, I, 0) == JetPolynomial(spec.context, spec.coefficient(I) * spec.tau_power(I, k))
    res.record("order-zero", p0, wit)
    if i % 4 == 0:
        homgluing_trial(res, i, rng)


def homgluing_trial(res: SuiteResult, i: int, rng) -> None:
    k = rng.randint(1, 2)
    small = rg.family_spec(rng, 2, k, rng.randint(1, 2), rng.randint(1, 2), terms=k + 2)
    indices = rng.sample(sorted(small.a), k + 1) if len(small.a) >= k + 1 else None
    if indices is None:
        return
    res.record("reduced-wronskian-identity", homgluing_check(small, indices),
               lambda: {"trial": i, "spec": _family_json(small), "indices": [list(I) for I in indices]})


def _hypersurface_sample(rng, n: int, k: int, attempts: int = 50):
    """A spec, a smooth point of ``F = 0`` and a germ through it."""
    for _ in range(attempts):
        spec = rg.family_spec(rng, n, k, rng.randint(1, 2), rng.randint(1, 2), terms=3)
        x = rg.point(rng, n)
        spec = rg.place_on_hypersurface(spec, x, rng)
        if spec is None:
            continue
        F = assemble_F(spec)
        try:
            pivot = distinguished_variable(F, x, spec.context.base_variables)
        except SingularPoint:
            continue
        direction = [rg.rational(rng, 3, 2) for _ in range(n)]
        gamma = germ_in_hypersurface(F, x, k, spec.context, direction)
        return spec, F, x, gamma, pivot
    raise RuntimeError("no smooth sample found")


def incidence_trial(res: SuiteResult, i: int, rng) -> None:
    n, k = rng.randint(2, 3), rng.randint(1, 2)
    spec, F, x, gamma, pivot = _hypersurface_sample(rng, n, k)
    wit = lambda: {"trial": i, "spec": _family_json(spec), "x": [str(c) for c in x], "gamma": _germ_json(gamma)}
    along = gamma.compose(F.with_variables(spec.context.base_variables))
    res.record("germ-in-hypersurface", not any(along.coeffs), wit)
    res.record("incidence", incidence_check(spec, gamma), wit)
    comps = list(gamma.components)
    coeffs = list(comps[pivot].coeffs)
    coeffs[-1] += rg.rational(rng, nonzero=True)
    comps[pivot] = TruncatedSeries(coeffs, gamma.order)
    bent = CurveGerm(gamma.context, tuple(comps))
    res.record("perturbed-fails", not incidence_check(spec, bent),
               lambda: {**wit(), "perturbed": _germ_json(bent)})


def _frame_sample(rng, attempts: int = 50):
    for _ in range(attempts):
        n, k = rng.randint(2, 3), rng.randint(1, 2)
        spec = rg.family_spec(rng, n, k, rng.randint(1, 2), rng.randint(1, 2), terms=2)
        w = rg.jet_point(rng, spec.context)
        data = stratum_data(spec, w.base_point())
        if not data.indices:
            continue
        names = spec.context.base_variables
        frame = [rg.polynomial(rng, names, degree=2, terms=3) for _ in range(k + 1)]
        s = rg.polynomial(rng, names, degree=1, terms=2)
        I = rng.choice(data.indices)
        try:
            lhs, rhs = local_frame_determinant(spec, I, frame, s, w)
        except FrameDegenerate:
            continue
        return spec, w, frame, s, I, lhs, rhs
    raise RuntimeError("no admissible frame found")


def frame_trial(res: SuiteResult, i: int, rng) -> None:
    spec, w, frame, s, I, lhs, rhs = _frame_sample(rng)
    wit = lambda: {"trial": i, "spec": _family_json(spec), "w": w.to_json(), "I": list(I),
                   "frame": [str(b.trimmed()) for b in frame], "s": str(s.trimmed()),
                   "lhs": str(lhs), "rhs": str(rhs)}
    res.record("frame-determinant", lhs == rhs, wit)
    ranks = frame_ranks(spec, frame, s, w)
    res.record("per-index-rank", all(r == spec.k + 1 for r in ranks.values()),
               lambda: {**wit(), "ranks": {str(I): r for I, r in ranks.items()}})


def plucker_trial(res: SuiteResult, i: int, rng) -> None:
    rows = 2 + i % 2
    cols = rng.randint(rows, 6)
    M = [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
    if rng.random() < 0.3:
        c = [rg.rational(rng) for _ in range(rows - 1)]
        M[-1] = [sum(ci * M[j][col] for j, ci in enumerate(c)) for col in range(cols)]
    wit = {"trial": i, "matrix": [[str(x) for x in row] for row in M]}
    pv = plucker_of(M)
    res.record("degenerate-iff-rank-deficient", (pv is None) == (rank(M) < rows), wit)
    if pv is None:
        return
    res.record("quadratic-relations", satisfies_plucker_relations(pv), wit)
    G = [[rng.randint(-2, 2) for _ in range(rows)] for _ in range(rows)]
    while not bareiss_det(G):
        G = [[rng.randint(-2, 2) for _ in range(rows)] for _ in range(rows)]
    GM = [[sum(G[a][b] * M[b][col] for b in range(rows)) for col in range(cols)] for a in range(rows)]
    res.record("row-space-invariance", pv.same_point(plucker_of(GM)), wit)


def _random_params(rng) -> ParamSet:
    while True:
        n = rng.randint(2, 4)
        k = rng.randint(1, 3)
        delta = rng.randint(1, 8)
        u, v = rng.randint(1, 9), rng.randint(1, 3)
        if gcd(u, v * delta) == 1:
            return ParamSet(n=n, N=n + rng.randint(0, 2), k=k, delta=delta, epsilon=rng.randint(0, 6),
                            u=u, v=v, m_inf=rng.randint(0, 6), M=rng.randint(0, 4), R=rng.randint(0, 12))


def bounds_trial(res: SuiteResult, i: int, rng) -> None:
    p = _random_params(rng)
    wit = {"trial": i, "params": p.__dict__}
    vd = p.v * p.delta
    d0 = degree_threshold(p)
    for d in range(d0, d0 + 10 * vd + 1):
        dec = decompose_degree(p, d)
        res.record("decompose-degree", not dec.validate(p), {**wit, "d": d})
        hits = [e for e in range(p.m_inf, p.m_inf + vd) if (p.u * e - d) % vd == 0]
        res.record("epsilon-unique", hits == [dec.epsilon], {**wit, "d": d})
    try:
        decompose_degree(p, d0 - 1)
        res.record("too-small", False, wit)
    except TooSmall:
        res.record("too-small", True)
    bad = ParamSet(**{**p.__dict__, "u": 2, "v": 2})
    try:
        decompose_degree(bad, 10 ** 6)
        res.record("gcd-error", False, wit)
    except GcdError:
        res.record("gcd-error", True)
    r0 = r_threshold(p.v, p.u, p.M, p.k, p.epsilon, p.delta)
    res.record("twist-negative", pullback_twist(p, r0) <= -1 and pullback_twist(p, r0 - 1) > -1, wit)
    if i == 0:
        _bounds_sweeps(res)


def _bounds_sweeps(res: SuiteResult) -> None:
    res.record("deng-n2", deng_bound(2) == (12338, 59049))
    for n in range(2, 51):
        d0, cap = deng_bound(n)
        res.record("deng-inequality", d0 <= cap, {"n": n})
    for n in range(2, 31):
        for k in range(0, 31):
            for delta in range(0, 31):
                rep = delta_conditions(ParamSet(n=n, N=n, k=k, delta=delta))
                res.record("basic-iff-margin", rep.basic == (rep.estimation_margin < 0),
                           {"n": n, "k": k, "delta": delta})
    for k in range(0, 101):
        res.record("kprime-sum", kprime(k) == sum(range(1, k + 1)), {"k": k})
    for N in range(0, 6):
        for delta in range(0, 6):
            for N_x in range(0, N + 2):
                total, local = index_counts(N, delta, N_x)
                ok = total == len(multi_indices(N, delta))
                ok = ok and local == len([I for I in multi_indices(N, delta) if not any(I[N_x:])])
                if N_x >= 2:
                    ok = ok and local >= delta + 1
                res.record("index-counts", ok, {"N": N, "delta": delta, "N_x": N_x})
    res.record("jet-dim", jet_dim(3, 2) == 7 and jet_dim(2, 1) == 3)


SUITES = {
    "oracle": (oracle_trial, 240),
    "leibniz": (leibniz_trial, 100),
    "faa-di-bruno": (faa_di_bruno_trial, 100),
    "invariance": (invariance_trial, 60),
    "multiplicativity": (multiplicativity_trial, 30),
    "cocycle": (cocycle_trial, 30),
    "factorization": (factorization_trial, 20),
    "incidence": (incidence_trial, 20),
    "frame-determinant": (frame_trial, 10),
    "plucker": (plucker_trial, 100),
    "bounds": (bounds_trial, 5),
}


def run_suite(name: str, seed=0, trials: int | None = None, start: int = 0) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    fn, default = SUITES[name]
    trials = default if trials is None else trials
    res = SuiteResult(name, seed, trials)
    for i in range(start, start + trials):
        fn(res, i, rg.trial_rng(seed, name, i))
    return res
