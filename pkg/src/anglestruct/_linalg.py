"""Exact linear algebra over Fraction matrices.

Plain Gaussian elimination; everything stays rational. Matrices are lists
(or tuples) of row tuples. Sizes here are small (at most a few hundred
columns), so no attempt is made at sparsity or pivoting heuristics beyond
picking the first nonzero.
"""

from __future__ import annotations

from fractions import Fraction


def rref(matrix):
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    rows = [list(map(Fraction, row)) for row in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix) -> int:
    return len(rref(matrix)[1])


def nullspace(matrix):
    """A basis of the kernel, one vector per free column."""
    rows, pivots = rref(matrix)
    if not rows:
        return []
    ncols = len(rows[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -rows[r][fc]
        basis.append(tuple(vec))
    return basis


def matvec(matrix, x):
    return tuple(sum(a * b for a, b in zip(row, x)) for row in matrix)


def solve(matrix, rhs):
    """One exact solution of matrix·x = rhs, or None if inconsistent."""
    aug = [list(map(Fraction, row)) + [Fraction(v)]
           for row, v in zip(matrix, rhs)]
    rows, pivots = rref(aug)
    ncols = len(matrix[0]) if matrix else 0
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][ncols]
    return tuple(x)
