from fractions import Fraction
from math import factorial

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from jetwronsk.jets import CurveGerm, JetContext, JetPoint, JetPolynomial, evaluate, jet_of_curve
from jetwronsk.reparam import (Reparam, act, act_on_polynomial, bell_polynomial, bell_polynomial_value,
                               compose_reparam, faa_di_bruno_coeffs, inverse_reparam)
from jetwronsk.series import TruncatedSeries

from strategies import nonzero_rationals, polynomials, rationals, series


def reparams(k):
    return st.tuples(nonzero_rationals, st.lists(rationals, min_size=k - 1, max_size=k - 1)).map(
        lambda a: Reparam(k, (a[0], *a[1])))


def test_compose_examples():
    assert compose_reparam(Reparam(1, (2,)), Reparam(1, (Fraction(1, 2),))) == Reparam.identity(1)
    psi = Reparam(3, (2, -1, 5))
    assert compose_reparam(Reparam.identity(3), psi) == psi
    assert compose_reparam(Reparam(2, (1, 1)), Reparam(2, (1, 1))) == Reparam(2, (1, 2))


def test_a1_must_be_nonzero():
    with pytest.raises(ValueError):
        Reparam(2, (0, 1))


def test_parse():
    assert Reparam.parse("2, 1/3") == Reparam(2, (2, Fraction(1, 3)))


def test_faa_di_bruno_p2_symbolic():
    # (h o phi)'' (0) = phi''(0) h'(0) + phi'(0)^2 h''(0), with phi'' = 2 a2
    a1, a2 = 3, Fraction(5, 7)
    assert faa_di_bruno_coeffs(Reparam(2, (a1, a2)), 2) == (2 * a2, a1 ** 2)


def test_identity_coefficients():
    for p in range(1, 6):
        assert faa_di_bruno_coeffs(Reparam.identity(5), p) == (0,) * (p - 1) + (1,)


def test_top_coefficient_is_power_of_a1():
    phi = Reparam(4, (Fraction(-2, 3), 1, 2, 3))
    for p in range(1, 5):
        assert faa_di_bruno_coeffs(phi, p)[-1] == phi.a1 ** p


def _partitions(n, j, smallest=1):
    if j == 0:
        if n == 0:
            yield ()
        return
    for first in range(smallest, n + 1):
        for rest in _partitions(n - first, j - 1, first):
            yield (first, *rest)


def bell_by_partitions(n, j, xs):
    """Closed form: sum over partitions of n into j blocks."""
    total = Fraction(0)
    for parts in _partitions(n, j):
        counts = {}
        for b in parts:
            counts[b] = counts.get(b, 0) + 1
        coeff = Fraction(factorial(n))
        term = Fraction(1)
        for b, c in counts.items():
            coeff /= factorial(b) ** c * factorial(c)
            term *= Fraction(xs[b - 1]) ** c
        total += coeff * term
    return total


@settings(max_examples=100, deadline=None)
@given(st.lists(rationals, min_size=7, max_size=7), st.integers(1, 7))
def test_bell_recurrence_matches_partition_sum(xs, n):
    for j in range(1, n + 1):
        assert bell_polynomial_value(n, j, xs) == bell_by_partitions(n, j, xs)


def test_bell_symbolic():
    assert str(bell_polynomial(4, 2)) == "4*x1*x3 + 3*x2^2"
    assert str(bell_polynomial(3, 3)) == "x1^3"


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5).flatmap(lambda k: st.tuples(reparams(k), series(k))))
def test_faa_di_bruno_against_composition(case):
    phi, h = case
    composite = h.compose(phi.series())
    for p in range(1, phi.k + 1):
        rhs = sum(c * h.derivative_at_zero(q) for q, c in enumerate(faa_di_bruno_coeffs(phi, p), start=1))
        assert composite.derivative_at_zero(p) == rhs


def test_faa_di_bruno_against_sympy():
    t = sp.Symbol("t")
    a = sp.symbols("a1:5")
    hs = sp.symbols("h1:5")
    phi = sum(a[i] * t ** (i + 1) for i in range(4))
    h = sum(hs[i] * t ** (i + 1) / sp.factorial(i + 1) for i in range(4))
    comp = sp.expand(h.subs(t, phi))
    vals = {a[0]: 2, a[1]: -1, a[2]: sp.Rational(1, 3), a[3]: 5}
    r = Reparam(4, (2, -1, Fraction(1, 3), 5))
    for p in range(1, 5):
        expected = sp.factorial(p) * comp.coeff(t, p)
        ours = sum(c * hs[q - 1] for q, c in enumerate(faa_di_bruno_coeffs(r, p), start=1))
        assert sp.expand(expected.subs(vals) - sp.nsimplify(ours)) == 0


def test_act_examples():
    ctx = JetContext(1, 1)
    w = JetPoint.from_mapping(ctx, {"z1": 0, "z1'": 1})
    assert act(Reparam(1, (2,)), w).as_mapping() == {"z1'": 2, "z1": 0}
    ctx = JetContext(2, 3)
    w = JetPoint(ctx, tuple(range(1, 9)))
    assert act(Reparam.identity(3), w) == w


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda k: st.tuples(reparams(k), reparams(k), reparams(k))))
def test_group_axioms(case):
    phi, psi, chi = case
    assert compose_reparam(compose_reparam(phi, psi), chi) == compose_reparam(phi, compose_reparam(psi, chi))
    ident = Reparam.identity(phi.k)
    assert compose_reparam(phi, ident) == phi == compose_reparam(ident, phi)
    inv = inverse_reparam(phi)
    assert compose_reparam(phi, inv) == ident == compose_reparam(inv, phi)


@st.composite
def action_case(draw):
    k = draw(st.integers(1, 4))
    n = draw(st.integers(1, 3))
    ctx = JetContext(n, k)
    rows = [draw(st.lists(rationals, min_size=k + 1, max_size=k + 1)) for _ in range(n)]
    return ctx, CurveGerm.from_coefficients(ctx, rows), draw(reparams(k)), draw(reparams(k))


@settings(max_examples=100, deadline=None)
@given(action_case())
def test_action_matches_reparametrized_curve(case):
    ctx, gamma, phi, _ = case
    assert act(phi, jet_of_curve(gamma)) == jet_of_curve(gamma.reparametrize(phi.series()))


@settings(max_examples=100, deadline=None)
@given(action_case())
def test_right_action_law(case):
    ctx, gamma, phi, psi = case
    w = jet_of_curve(gamma)
    assert act(psi, act(phi, w)) == act(compose_reparam(phi, psi), w)


@settings(max_examples=50, deadline=None)
@given(action_case(), st.data())
def test_symbolic_action_agrees_with_pointwise(case, data):
    ctx, gamma, phi, _ = case
    f = JetPolynomial(ctx, data.draw(polynomials(ctx.variables, max_degree=2, max_terms=3)))
    w = jet_of_curve(gamma)
    assert evaluate(act_on_polynomial(phi, f), w) == evaluate(f, act(phi, w))
