"""Exact linear algebra over the rationals.

Rank / row-space / solving are done by fraction-free (Bareiss) elimination on
integer matrices obtained by clearing denominators row by row, which keeps
intermediate entries as minors instead of ever-growing fractions.  Inputs are
sequences of sequences of ints or Fractions; nothing here is float-aware.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .core import as_fraction

__all__ = [
    "clear_denominators",
    "row_echelon_int",
    "rank",
    "row_basis",
    "solve_linear",
    "matrix_multiply",
    "transpose",
]

Matrix = Sequence[Sequence]


def clear_denominators(row: Sequence) -> list:
    """Scale a rational row by the lcm of denominators; returns integers."""
    fr = [as_fraction(v) for v in row]
    mult = lcm(*(f.denominator for f in fr)) if fr else 1
    return [int(f * mult) for f in fr]


def _primitive(row: list) -> list:
    g = 0
    for v in row:
        g = gcd(g, abs(v))
    if g > 1:
        return [v // g for v in row]
    return list(row)


def row_echelon_int(rows: list) -> tuple:
    """Fraction-free row echelon form of an integer matrix.

    Returns (echelon_rows, pivot_columns); echelon_rows are the nonzero rows,
    so len(echelon_rows) == rank.  All intermediate divisions are exact.
    """
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots = []
    r = 0
    prev = 1
    for c in range(nc):
        p = next((i for i in range(r, nr) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        for i in range(r + 1, nr):
            if not any(m[i][c:]):
                continue
            for j in range(c + 1, nc):
                m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return [m[i] for i in range(r)], pivots


def rank(rows: Matrix) -> int:
    ech, _ = row_echelon_int([clear_denominators(r) for r in rows])
    return len(ech)


def row_basis(rows: Matrix) -> list:
    """A basis of the row space, as primitive integer-entry Fraction rows."""
    ech, _ = row_echelon_int([clear_denominators(r) for r in rows])
    return [[Fraction(v) for v in _primitive(r)] for r in ech]


def solve_linear(a: Matrix, b: Sequence) -> tuple:
    """One exact solution of a x = b with free variables pinned to zero.

    Returns (solution | None, nullity); None when the system is inconsistent.
    Pivoting scans columns left to right, so the output is deterministic.
    """
    rows = [list(r) for r in a]
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    if len(b) != nr:
        raise ValueError(f"rhs length {len(b)} != row count {nr}")
    aug = [clear_denominators(list(rows[i]) + [b[i]]) for i in range(nr)]
    ech, pivots = row_echelon_int(aug)
    if nc in pivots:
        return None, nc - (len(pivots) - 1)
    nullity = nc - len(pivots)
    x = [Fraction(0)] * nc
    for i in range(len(ech) - 1, -1, -1):
        c = pivots[i]
        acc = Fraction(ech[i][nc])
        for j in range(c + 1, nc):
            if ech[i][j]:
                acc -= ech[i][j] * x[j]
        x[c] = acc / ech[i][c]
    return x, nullity


def transpose(rows: Matrix) -> list:
    return [list(col) for col in zip(*rows)]


def matrix_multiply(a: Matrix, b: Matrix) -> list:
    bt = list(zip(*b))
    return [
        [sum((as_fraction(x) * as_fraction(y) for x, y in zip(row, col)), Fraction(0)) for col in bt]
        for row in a
    ]
