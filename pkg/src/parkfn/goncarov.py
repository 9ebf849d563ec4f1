"""Goncarov polynomials evaluated exactly from their determinant formula.

g_m(x; a_0..a_{m-1}) is m! times the determinant of the (m+1)x(m+1) matrix
whose row i holds the Taylor monomials a_i^k/k! shifted right by i and whose
last row holds x^k/k!.  All arithmetic is over Fraction: the factorial
denominators make floating point useless for counting, and (-1)^m g_m(0; u)
must come out as an exact integer.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .core import InternalInvariantError, UVector


def _det_fraction(mat: list[list[Fraction]]) -> Fraction:
    """Determinant by exact Gaussian elimination with partial pivoting."""
    n = len(mat)
    if n == 0:
        return Fraction(1)
    det = Fraction(1)
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            mat[col], mat[pivot_row] = mat[pivot_row], mat[col]
            det = -det
        pivot = mat[col][col]
        det *= pivot
        for r in range(col + 1, n):
            if mat[r][col] == 0:
                continue
            factor = mat[r][col] / pivot
            row_r, row_c = mat[r], mat[col]
            for c in range(col, n):
                row_r[c] -= factor * row_c[c]
    return det


def _factorials(n: int) -> list[int]:
    out = [1] * (n + 1)
    for i in range(1, n + 1):
        out[i] = out[i - 1] * i
    return out


def _goncarov_matrix(nodes: Sequence[Fraction], m: int, fact: list[int]) -> list[list[Fraction]]:
    """Rows 0..m-1 of the determinant formula (the last, x-dependent row is left off)."""
    rows = []
    for i in range(m):
        a = nodes[i]
        row = [Fraction(0)] * (m + 1)
        power = Fraction(1)
        for j in range(i, m + 1):
            row[j] = power / fact[j - i]
            power *= a
        rows.append(row)
    return rows


def goncarov_eval(x, nodes: Sequence) -> Fraction:
    """Exact value of g_m(x; nodes) for m = len(nodes); g_0 = 1."""
    x = Fraction(x)
    nodes = [Fraction(a) for a in nodes]
    m = len(nodes)
    if m == 0:
        return Fraction(1)
    fact = _factorials(m)
    mat = _goncarov_matrix(nodes, m, fact)
    last = []
    power = Fraction(1)
    for j in range(m + 1):
        last.append(power / fact[j])
        power *= x
    mat.append(last)
    return fact[m] * _det_fraction(mat)


def goncarov_coefficients(nodes: Sequence) -> list[Fraction]:
    """Coefficients c_0..c_m of g_m(x; nodes) as a polynomial in x.

    Obtained by expanding the determinant along its last (symbolic) row:
    the x^j/j! entry multiplies the signed minor that deletes column j.
    Only the biorthogonality checks need this form.
    """
    nodes = [Fraction(a) for a in nodes]
    m = len(nodes)
    if m == 0:
        return [Fraction(1)]
    fact = _factorials(m)
    rows = _goncarov_matrix(nodes, m, fact)
    coeffs = []
    for j in range(m + 1):
        minor = [[row[c] for c in range(m + 1) if c != j] for row in rows]
        sign = -1 if (m + j) % 2 else 1
        coeffs.append(sign * fact[m] * _det_fraction(minor) / fact[j])
    return coeffs


def abel_goncarov(x, a: int, b: int, m: int) -> Fraction:
    """Closed form (x-a)(x-a-mb)^{m-1} of g_m on the arithmetic nodes a, a+b, ..."""
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    x = Fraction(x)
    if m == 0:
        return Fraction(1)
    return (x - a) * (x - a - m * b) ** (m - 1)


@lru_cache(maxsize=None)
def _count_pf_cached(u: tuple[int, ...]) -> int:
    m = len(u)
    value = goncarov_eval(0, u)
    if m % 2:
        value = -value
    if value.denominator != 1:
        raise InternalInvariantError(f"count_pf({u}) is not integral: {value}")
    if value < 0:
        raise InternalInvariantError(f"count_pf({u}) is negative: {value}")
    return int(value)


def count_pf(u: UVector) -> int:
    """|PF(u)| = (-1)^m g_m(0; u_1..u_m), asserted integral and nonnegative."""
    return _count_pf_cached(u.u)


def count_pf_ab(a: int, b: int, m: int) -> int:
    """|PF(a,b,m)| = a(a+mb)^{m-1} from the Abel closed form."""
    if a < 1 or b < 1 or m < 1:
        raise ValueError(f"a, b, m must be positive, got a={a} b={b} m={m}")
    return a * (a + m * b) ** (m - 1)
