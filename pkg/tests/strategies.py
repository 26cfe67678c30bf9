"""Hypothesis strategies shared by the property tests."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from jetwronsk.polynomial import Polynomial
from jetwronsk.series import TruncatedSeries

rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 4))
nonzero_rationals = rationals.filter(bool)


def polynomials(names=("z1", "z2"), max_degree=3, max_terms=4):
    names = tuple(names)
    exps = st.tuples(*[st.integers(0, max_degree) for _ in names]).filter(lambda e: sum(e) <= max_degree)
    return st.dictionaries(exps, rationals, max_size=max_terms).map(lambda d: Polynomial(names, d))


def series(order, zero_constant=False):
    head = st.just(Fraction(0)) if zero_constant else rationals
    return st.tuples(head, st.lists(rationals, min_size=order, max_size=order)).map(
        lambda hc: TruncatedSeries([hc[0], *hc[1]], order))
