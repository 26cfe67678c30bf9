"""Sparse multivariate polynomials over the rationals.

Coefficients are kept as ``int`` when integral and as ``fractions.Fraction``
otherwise, so arithmetic is always exact.  Exponent vectors are dense tuples
indexed by the polynomial's variable tuple, which is kept in a canonical order
(see :func:`var_key`) so that two polynomials over the same names share their
layout.
"""
from __future__ import annotations

import heapq
import re
from fractions import Fraction
from numbers import Rational
from operator import add, sub
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Union

from .errors import DivisionFails

Scalar = Union[int, Fraction]

_NAME_PARTS = re.compile(r"(.*?)(\d*)('*)")


def var_key(name: str):
    """Sort key for variable names.

    Names split into a prefix, an optional index and a run of primes.  Indices
    compare numerically and, for one base name, higher derivatives come first,
    so the jet universe of ``z1`` reads ``z1'', z1', z1``.
    """
    prefix, digits, primes = _NAME_PARTS.fullmatch(name).groups()
    return (prefix, int(digits) if digits else -1, -len(primes), name)


def _print_key(name: str):
    prefix, digits, primes = _NAME_PARTS.fullmatch(name).groups()
    return (prefix, int(digits) if digits else -1, len(primes), name)


def to_rational(value) -> Scalar:
    """Normalize ``value`` to an ``int`` or a non-integral ``Fraction``."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return to_rational(Fraction(value.strip()))
    if isinstance(value, Rational):
        return to_rational(Fraction(value.numerator, value.denominator))
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


def format_rational(value: Scalar) -> str:
    return str(value)


class Polynomial:
    """Immutable sparse polynomial ``{exponent vector: coefficient}``."""

    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, variables: Iterable[str] = (), terms: Mapping | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        perm = sorted(range(len(variables)), key=lambda i: var_key(variables[i]))
        out: dict = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(variables):
                raise ValueError(f"exponent vector {exps} does not match {variables}")
            if any(not isinstance(e, int) or e < 0 for e in exps):
                raise ValueError(f"exponents must be non-negative integers: {exps}")
            key = tuple(exps[i] for i in perm)
            out[key] = out.get(key, 0) + to_rational(coeff)
        self._vars = tuple(variables[i] for i in perm)
        self._terms = {e: to_rational(c) for e, c in out.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "Polynomial":
        # trusted constructor: canonical variables, no zero coefficients
        p = object.__new__(cls)
        p._vars = variables
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, value, variables: Iterable[str] = ()) -> "Polynomial":
        variables = tuple(sorted(variables, key=var_key))
        value = to_rational(value)
        return cls._raw(variables, {(0,) * len(variables): value} if value else {})

    @classmethod
    def zero(cls, variables: Iterable[str] = ()) -> "Polynomial":
        return cls.constant(0, variables)

    @classmethod
    def variable(cls, name: str, variables: Iterable[str] | None = None) -> "Polynomial":
        universe = tuple(sorted(set(variables or ()) | {name}, key=var_key))
        exps = tuple(1 if v == name else 0 for v in universe)
        return cls._raw(universe, {exps: 1})

    @classmethod
    def monomial(cls, exponents: Mapping[str, int], coeff=1,
                 variables: Iterable[str] | None = None) -> "Polynomial":
        universe = tuple(sorted(set(variables or ()) | set(exponents), key=var_key))
        return cls(universe, {tuple(exponents.get(v, 0) for v in universe): coeff})

    # -- inspection -------------------------------------------------------

    @property
    def variables(self) -> tuple:
        return self._vars

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> Scalar:
        return self._terms.get((0,) * len(self._vars), 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def used_variables(self) -> tuple:
        return tuple(v for i, v in enumerate(self._vars)
                     if any(e[i] for e in self._terms))

    def sorted_terms(self) -> list:
        """Terms in graded-lexicographic descending order."""
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def leading_term(self):
        return max(self._terms.items(), key=lambda t: (sum(t[0]), t[0]))

    # -- universe handling ------------------------------------------------

    def with_variables(self, variables: Iterable[str]) -> "Polynomial":
        """Re-express over ``variables``, which must contain every used name."""
        target = tuple(sorted(set(variables), key=var_key))
        if target == self._vars:
            return self
        pos = {v: i for i, v in enumerate(target)}
        used = self.used_variables()
        missing = [v for v in used if v not in pos]
        if missing:
            raise ValueError(f"variables {missing} are not in the target universe")
        mapping = [(i, pos[v]) for i, v in enumerate(self._vars) if v in pos]
        terms = {}
        for exps, c in self._terms.items():
            new = [0] * len(target)
            for i, j in mapping:
                new[j] = exps[i]
            terms[tuple(new)] = c
        return Polynomial._raw(target, terms)

    def trimmed(self) -> "Polynomial":
        return self.with_variables(self.used_variables())

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial.constant(other, self._vars)

    def _align(self, other):
        other = self._coerce(other)
        if other._vars == self._vars:
            return self, other
        universe = set(self._vars) | set(other._vars)
        return self.with_variables(universe), other.with_variables(universe)

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, (Polynomial, int, Fraction)):
            return NotImplemented
        a, b = self._align(other)
        terms = dict(a._terms)
        for e, c in b._terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = to_rational(s)
            else:
                terms.pop(e, None)
        return Polynomial._raw(a._vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self._vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (Polynomial, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor) -> "Polynomial":
        factor = to_rational(factor)
        if not factor:
            return Polynomial._raw(self._vars, {})
        return Polynomial._raw(self._vars, {e: to_rational(c * factor)
                                            for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._align(other)
        if len(a._terms) < len(b._terms):
            a, b = b, a
        res: dict = {}
        get = res.get
        for eb, cb in b._terms.items():
            for ea, ca in a._terms.items():
                e = tuple(map(add, ea, eb))
                res[e] = get(e, 0) + ca * cb
        return Polynomial._raw(a._vars, {e: to_rational(c) for e, c in res.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = Polynomial.constant(1, self._vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of a polynomial by zero")
            return self.scale(Fraction(1) / other)
        if isinstance(other, Polynomial):
            return self.divide_exact(other)
        return NotImplemented

    def divide_exact(self, den: "Polynomial") -> "Polynomial":
        """Return ``q`` with ``q * den == self`` or raise :class:`DivisionFails`.

        Heap-based multivariate long division in graded-lex order.  Since the
        leading monomial is multiplicative, a leading term of the remainder not
        divisible by the leading term of ``den`` proves non-divisibility.
        """
        num, den = self._align(den)
        if not den:
            raise ZeroDivisionError("division by the zero polynomial")
        if den.is_constant():
            return num.scale(Fraction(1) / den.constant_term())
        lead_e, lead_c = den.leading_term()
        tail = [(e, c) for e, c in den._terms.items() if e != lead_e]
        rem = dict(num._terms)
        heap = [(-sum(e), tuple(-x for x in e)) for e in rem]
        heapq.heapify(heap)
        quotient: dict = {}
        while heap:
            _, neg = heapq.heappop(heap)
            e = tuple(-x for x in neg)
            c = rem.pop(e, 0)
            if not c:
                continue
            shift = tuple(map(sub, e, lead_e))
            if min(shift) < 0:
                raise DivisionFails(f"{self} is not divisible by {den}")
            q = Fraction(c) / lead_c
            q = q.numerator if q.denominator == 1 else q
            quotient[shift] = q
            for te, tc in tail:
                ne = tuple(map(add, te, shift))
                old = rem.get(ne)
                val = (old or 0) - q * tc
                if val:
                    if old is None:
                        heapq.heappush(heap, (-sum(ne), tuple(-x for x in ne)))
                    rem[ne] = val
                else:
                    rem.pop(ne, None)
        return Polynomial._raw(num._vars, {e: to_rational(c) for e, c in quotient.items()})

    # -- calculus and substitution ----------------------------------------

    def diff(self, name: str) -> "Polynomial":
        if name not in self._vars:
            return Polynomial._raw(self._vars, {})
        i = self._vars.index(name)
        terms = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                terms[ne] = c * e[i]
        return Polynomial._raw(self._vars, terms)

    def evaluate(self, values: Mapping[str, object] | Sequence) -> Scalar:
        """Exact value at a point given by name or by position."""
        if isinstance(values, Mapping):
            point = [to_rational(values[v]) if v in values else None for v in self._vars]
        else:
            point = [to_rational(x) for x in values]
            if len(point) != len(self._vars):
                raise ValueError("positional point does not match the variables")
        total = 0
        for e, c in self._terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    if x is None:
                        raise KeyError("missing value for a used variable")
                    term *= x ** k
            total += term
        return to_rational(total)

    def substitute(self, mapping: Mapping[str, object]) -> "Polynomial":
        """Replace variables by polynomials or scalars; other variables stay."""
        images = {}
        for v, img in mapping.items():
            if v in self._vars:
                images[v] = img if isinstance(img, Polynomial) else to_rational(img)
        keep = [v for v in self._vars if v not in images]
        universe = set(keep)
        for img in images.values():
            if isinstance(img, Polynomial):
                universe |= set(img.used_variables())
        powers: dict = {}

        def power(v, k):
            key = (v, k)
            if key not in powers:
                img = images[v]
                if isinstance(img, Polynomial):
                    powers[key] = img.with_variables(universe) ** k
                else:
                    powers[key] = img ** k
            return powers[key]

        result = Polynomial.zero(universe)
        for e, c in self._terms.items():
            scalar = c
            mono = {}
            polys = []
            for v, k in zip(self._vars, e):
                if not k:
                    continue
                if v in images:
                    pk = power(v, k)
                    if isinstance(pk, Polynomial):
                        polys.append(pk)
                    else:
                        scalar *= pk
                else:
                    mono[v] = k
            term = Polynomial.monomial(mono, to_rational(scalar), universe)
            for pk in polys:
                term = term * pk
            result = result + term
        return result

    # -- comparison and printing ------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self._vars == other._vars:
            return self._terms == other._terms
        a, b = self._align(other)
        return a._terms == b._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(
                (tuple((v, k) for v, k in zip(self._vars, e) if k), c)
                for e, c in self._terms.items()))
        return self._hash

    def _monomial_str(self, exps) -> str:
        factors = sorted(((v, k) for v, k in zip(self._vars, exps) if k),
                         key=lambda vk: _print_key(vk[0]))
        return "*".join(v if k == 1 else f"{v}^{k}" for v, k in factors)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for exps, c in self.sorted_terms():
            mono = self._monomial_str(exps)
            if not mono:
                s = str(c)
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                s = f"{c}*{mono}"
            if not out:
                out.append(s)
            elif s.startswith("-"):
                out.append(" - " + s[1:])
            else:
                out.append(" + " + s)
        return "".join(out)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r}, variables={self._vars!r})"

    def to_json(self) -> dict:
        """``{monomial text: coefficient text}``; the constant monomial is ``"1"``."""
        return {self._monomial_str(e) or "1": str(c) for e, c in self.sorted_terms()}
