"""Exact determinants, ranks and minors over rationals or polynomials."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .polynomial import Polynomial, to_rational


def _exact_div(a, b):
    if isinstance(a, Polynomial):
        return a.divide_exact(b)
    if isinstance(b, Polynomial):
        return Polynomial.constant(a).divide_exact(b)
    return to_rational(Fraction(a) / b)


def bareiss_det(matrix: Sequence[Sequence], divide: Callable = _exact_div):
    """Fraction-free Gaussian elimination.

    Every intermediate entry is a minor of the input, so the divisions by the
    previous pivot are exact in any integral domain.
    """
    m = [list(row) for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for c in range(n - 1):
        if not m[c][c]:
            for r in range(c + 1, n):
                if m[r][c]:
                    m[c], m[r] = m[r], m[c]
                    sign = -sign
                    break
            else:
                return _zero_like(m[0][0])
        pivot = m[c][c]
        for r in range(c + 1, n):
            for j in range(c + 1, n):
                num = pivot * m[r][j] - m[r][c] * m[c][j]
                m[r][j] = num if prev == 1 else divide(num, prev)
            m[r][c] = _zero_like(pivot)
        prev = pivot
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def _zero_like(x):
    if isinstance(x, Polynomial):
        return Polynomial.zero(x.variables)
    return 0


def cofactor_det(matrix: Sequence[Sequence]):
    """Laplace expansion along rows, memoized on the set of remaining columns."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    cache: dict = {}

    def minor(row: int, cols: tuple):
        if row == n:
            return 1
        if cols in cache:
            return cache[cols]
        total = None
        for pos, c in enumerate(cols):
            entry = matrix[row][c]
            if not entry:
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
            if isinstance(sub, Polynomial) and not sub:
                continue
            if not isinstance(sub, Polynomial) and sub == 0:
                continue
            term = entry * sub
            if pos % 2:
                term = -term
            total = term if total is None else total + term
        result = total if total is not None else _zero_like(matrix[0][0])
        cache[cols] = result
        return result

    return minor(0, tuple(range(n)))


def permutation_det(matrix: Sequence[Sequence]):
    """Leibniz-formula determinant; only for tiny matrices used as an oracle."""
    from itertools import permutations

    n = len(matrix)
    total = 0
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for r, c in enumerate(perm):
            term = term * matrix[r][c]
        total = total + term
    return total


def determinant(matrix: Sequence[Sequence]):
    """Exact determinant.

    Scalar matrices use Bareiss elimination.  For polynomial entries the
    memoized cofactor expansion is markedly faster up to size 5 (the exact
    polynomial divisions dominate Bareiss there), so elimination is kept for
    larger sizes only.
    """
    symbolic = any(isinstance(x, Polynomial) for row in matrix for x in row)
    if symbolic and len(matrix) <= 5:
        return cofactor_det(matrix)
    return bareiss_det(matrix)


def rank(matrix: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by Gaussian elimination."""
    rows = [[Fraction(x) for x in row] for row in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def maximal_minors(matrix: Sequence[Sequence]) -> dict:
    """All ``rows x rows`` minors of a wide matrix, keyed by sorted column tuples."""
    k1 = len(matrix)
    ncols = len(matrix[0]) if k1 else 0
    out = {}
    for cols in combinations(range(ncols), k1):
        sub = [[row[c] for c in cols] for row in matrix]
        out[cols] = bareiss_det(sub)
    return out


def solve_cramer(matrix: Sequence[Sequence], rhs: Sequence) -> list:
    """Solve ``matrix x = rhs`` by Cramer's rule (exact rationals)."""
    det = bareiss_det(matrix)
    if not det:
        raise ZeroDivisionError("singular matrix")
    n = len(matrix)
    out = []
    for p in range(n):
        replaced = [[rhs[r] if c == p else matrix[r][c] for c in range(n)] for r in range(n)]
        out.append(to_rational(Fraction(bareiss_det(replaced)) / det))
    return out
