import json
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jetwronsk.errors import OrderOverflow
from jetwronsk.jets import (CurveGerm, JetContext, JetPoint, evaluate, jet_derivative, jet_of_curve,
                            leibniz_check)
from jetwronsk.parsing import parse_polynomial
from jetwronsk.polynomial import Polynomial
from jetwronsk.series import TruncatedSeries

import oracle
from strategies import polynomials, rationals


def ctx_poly(ctx, text):
    return ctx.lift(parse_polynomial(text, ctx.variables))


def test_variable_universe_order():
    assert JetContext(2, 2).variables == ("z1''", "z1'", "z1", "z2''", "z2'", "z2")


def test_first_derivative_of_coordinate():
    ctx = JetContext(1, 1)
    assert str(jet_derivative(ctx.var(1), 1)) == "z1'"


def test_second_derivative_of_product_golden():
    ctx = JetContext(2, 2)
    d = jet_derivative(ctx_poly(ctx, "z1*z2"), 2)
    assert str(d) == "z1''*z2 + 2*z1'*z2' + z1*z2''"


def test_second_derivative_matches_sympy():
    ctx = JetContext(2, 2)
    f = parse_polynomial("z1*z2", ctx.base_variables)
    expected = oracle.from_sympy(oracle.jet_derivative(f, 2, 2), ctx.variables)
    assert jet_derivative(f, 2, ctx).poly == expected


def test_order_zero_is_identity():
    ctx = JetContext(2, 3)
    f = ctx_poly(ctx, "z1^3 - z2 + 7")
    assert jet_derivative(f, 0) == f


def test_order_overflow():
    ctx = JetContext(2, 2)
    with pytest.raises(OrderOverflow):
        jet_derivative(ctx_poly(ctx, "z1"), 3)
    with pytest.raises(OrderOverflow):
        jet_derivative(ctx_poly(ctx, "z1'"), 2)
    assert jet_derivative(ctx_poly(ctx, "z1'"), 1) == ctx_poly(ctx, "z1''")


def test_constant_has_zero_derivatives():
    ctx = JetContext(3, 4)
    for p in range(1, 5):
        assert not jet_derivative(ctx.constant(5), p)


def test_jet_of_curve_examples():
    ctx = JetContext(2, 1)
    w = jet_of_curve(CurveGerm.from_coefficients(ctx, [[0, 1], [0, 0]]))
    assert w.as_mapping() == {"z1'": 1, "z1": 0, "z2'": 0, "z2": 0}
    ctx = JetContext(2, 2)
    w = jet_of_curve(CurveGerm.from_coefficients(ctx, [[0, 0, 1], [0, 1, 0]]))
    assert w.as_mapping() == {"z1''": 2, "z1'": 0, "z1": 0, "z2''": 0, "z2'": 1, "z2": 0}
    w = jet_of_curve(CurveGerm.from_coefficients(ctx, [[3], [Fraction(1, 2)]]))
    assert [w.value(i, m) for i in (1, 2) for m in (1, 2)] == [0, 0, 0, 0]


def test_evaluate_examples():
    ctx = JetContext(2, 1)
    w = jet_of_curve(CurveGerm.from_coefficients(ctx, [[0, 1], [0, 0]]))
    assert evaluate(ctx.var(1, 1), w) == 1
    assert evaluate(ctx.constant(Fraction(3, 7)), w) == Fraction(3, 7)
    ctx = JetContext(2, 2)
    w = jet_of_curve(CurveGerm.from_coefficients(ctx, [[0, 1], [0, 1]]))
    assert evaluate(jet_derivative(ctx_poly(ctx, "z1*z2"), 2), w) == 2


def test_leibniz_examples():
    ctx = JetContext(2, 1)
    assert leibniz_check(ctx.var(1), ctx.var(2), 1)
    assert str(jet_derivative(ctx.var(1) * ctx.var(2), 1)) == "z1'*z2 + z1*z2'"
    ctx = JetContext(2, 3)
    assert leibniz_check(ctx.constant(1), ctx_poly(ctx, "z1^2*z2 - z2"), 3)


def test_jet_point_json_round_trip():
    ctx = JetContext(2, 2)
    w = JetPoint(ctx, (1, Fraction(-2, 3), 0, 5, 7, Fraction(1, 9)))
    data = json.loads(json.dumps(w.to_json()))
    assert data["z1''"] == "1" and data["z2"] == "1/9"
    assert JetPoint.from_json(ctx, data) == w


def test_jet_point_requires_every_coordinate():
    with pytest.raises(ValueError):
        JetPoint.from_mapping(JetContext(1, 1), {"z1": 0})


contexts = st.sampled_from([(n, k) for n in (1, 2, 3) for k in (1, 2, 3, 4)])


@st.composite
def oracle_case(draw):
    n, k = draw(contexts)
    ctx = JetContext(n, k)
    f = draw(polynomials(ctx.base_variables, max_degree=3, max_terms=4))
    rows = [draw(st.lists(rationals, min_size=k + 1, max_size=k + 1)) for _ in range(n)]
    return ctx, f, CurveGerm.from_coefficients(ctx, rows)


@settings(max_examples=200, deadline=None)
@given(oracle_case())
def test_oracle_equivalence(case):
    ctx, f, gamma = case
    w = jet_of_curve(gamma)
    along = gamma.compose(f)
    for p in range(ctx.k + 1):
        assert evaluate(jet_derivative(f, p, ctx), w) == factorial(p) * along[p]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(1, 3), (2, 2), (3, 1), (2, 3)]).flatmap(
    lambda nk: st.tuples(st.just(nk), polynomials(tuple(f"z{i}" for i in range(1, nk[0] + 1))))))
def test_symbolic_derivative_matches_sympy(case):
    (n, k), f = case
    ctx = JetContext(n, k)
    for p in range(k + 1):
        expected = oracle.from_sympy(oracle.jet_derivative(f, p, n), ctx.variables)
        assert jet_derivative(f, p, ctx).poly == expected


@settings(max_examples=100, deadline=None)
@given(polynomials(), polynomials(), st.integers(0, 3))
def test_leibniz_random(f, g, p):
    assert leibniz_check(f, g, p, JetContext(2, 3))


@settings(max_examples=100, deadline=None)
@given(polynomials(), polynomials(), rationals, st.integers(0, 3))
def test_linearity(f, g, c, p):
    ctx = JetContext(2, 3)
    assert jet_derivative(f * c + g, p, ctx) == jet_derivative(f, p, ctx) * c + jet_derivative(g, p, ctx)


@settings(max_examples=100, deadline=None)
@given(polynomials(), polynomials(max_degree=1), st.tuples(rationals, rationals),
       st.lists(rationals, min_size=6, max_size=6), st.integers(0, 2))
def test_depends_only_on_p_jet_of_f(f, h, x, derivs, p):
    ctx = JetContext(2, 2)
    for _ in range(p + 1):
        h = h * (Polynomial.variable("z1", ("z1", "z2")) - x[0])
    w = JetPoint.from_derivatives(ctx, [[x[0], *derivs[:2]], [x[1], *derivs[2:4]]])
    assert evaluate(jet_derivative(f + h, p, ctx), w) == evaluate(jet_derivative(f, p, ctx), w)
