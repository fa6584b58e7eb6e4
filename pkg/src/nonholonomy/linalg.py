"""Exact linear algebra over the rationals.

Rank uses fraction-free (Bareiss) elimination on denominator-cleared integer
rows, so intermediate entries stay integers and never lose exactness. Kernel
bases come from Gauss-Jordan over Fractions. Everything here is
deterministic: pivots are chosen first-come in row order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .errors import InputError


def _integer_rows(rows):
    """Copy rows, clearing denominators row by row."""
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        scale = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * scale) for x in row])
    return out


def rank(rows) -> int:
    """Rank of a matrix given as an iterable of equal-length rows."""
    M = _integer_rows(rows)
    if not M or not M[0]:
        return 0
    n_rows, n_cols = len(M), len(M[0])
    if any(len(row) != n_cols for row in M):
        raise InputError("rows have unequal lengths")
    r = 0
    prev = 1
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, n_rows):
            row_i, row_r = M[i], M[r]
            head = row_i[c]
            for j in range(c + 1, n_cols):
                row_i[j] = (row_i[j] * row_r[c] - head * row_r[j]) // prev
            row_i[c] = 0
        prev = M[r][c]
        r += 1
        if r == n_rows:
            break
    return r


def rref(rows):
    """Reduced row echelon form over Fractions.

    Returns (matrix, pivot_columns) with 0-based pivot column indices.
    """
    M = [[Fraction(x) for x in row] for row in rows]
    if not M or not M[0]:
        return M, []
    n_rows, n_cols = len(M), len(M[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(n_rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return M, pivots


def kernel_basis(rows, n_cols: int):
    """Basis of {v : A v = 0} for the matrix with the given rows.

    An empty row list means the zero map, whose kernel is all of Q^n_cols.
    Basis vectors are tuples of Fractions, one per free column, in column
    order; this makes the result deterministic.
    """
    rows = [list(row) for row in rows]
    for row in rows:
        if len(row) != n_cols:
            raise InputError("row of length %d does not match %d columns" % (len(row), n_cols))
    M, pivots = rref(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * n_cols
        v[free] = Fraction(1)
        for r_idx, p in enumerate(pivots):
            v[p] = -M[r_idx][free]
        basis.append(tuple(v))
    return basis


def solve(rows, rhs):
    """One solution of A x = b, or None when inconsistent.

    Deterministic: free variables are set to zero.
    """
    rows = [list(row) + [b] for row, b in zip(rows, rhs)]
    if len(rows) != len(rhs):
        raise InputError("rhs length does not match row count")
    if not rows:
        return ()
    n_cols = len(rows[0]) - 1
    M, pivots = rref(rows)
    if n_cols in pivots:
        return None
    x = [Fraction(0)] * n_cols
    for r_idx, p in enumerate(pivots):
        x[p] = M[r_idx][n_cols]
    return tuple(x)


def normalize_primitive(vec):
    """Scale a rational vector to integers with gcd 1 and first nonzero entry
    positive. The zero vector comes back as integer zeros."""
    vec = [Fraction(x) for x in vec]
    if not any(vec):
        return tuple(0 for _ in vec)
    scale = lcm(*(x.denominator for x in vec))
    ints = [int(x * scale) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    first = next(x for x in ints if x)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(ints)
