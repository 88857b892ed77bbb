"""Exact rational linear algebra: fraction-free elimination, rank, nullspace.

Matrices are dense lists of :class:`fractions.Fraction` rows.  Elimination
clears denominators row-wise and runs Bareiss one-step fraction-free
reduction on integers, so intermediate entries stay divisions-free and
bounded; pivots are chosen by smallest bit length to limit growth.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def _integer_rows(rows: list[list[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        denom = lcm(*(value.denominator for value in row)) if row else 1
        scaled = [int(value * denom) for value in row]
        common = 0
        for value in scaled:
            common = gcd(common, value)
        if common > 1:
            scaled = [value // common for value in scaled]
        out.append(scaled)
    return out


def _echelon(matrix: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Bareiss fraction-free row echelon form; returns (matrix, pivot columns)."""
    n_rows = len(matrix)
    n_cols = len(matrix[0]) if matrix else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for col in range(n_cols):
        best = None
        for i in range(r, n_rows):
            value = matrix[i][col]
            if value:
                if best is None or abs(value).bit_length() < abs(matrix[best][col]).bit_length():
                    best = i
        if best is None:
            continue
        matrix[r], matrix[best] = matrix[best], matrix[r]
        pivot = matrix[r][col]
        for i in range(r + 1, n_rows):
            head = matrix[i][col]
            row_i, row_r = matrix[i], matrix[r]
            matrix[i] = [
                (pivot * row_i[j] - head * row_r[j]) // prev for j in range(n_cols)
            ]
        pivots.append(col)
        prev = pivot
        r += 1
        if r == n_rows:
            break
    return matrix, pivots


def rank(rows: list[list[Fraction]]) -> int:
    if not rows:
        return 0
    _, pivots = _echelon(_integer_rows(rows))
    return len(pivots)


def nullspace(rows: list[list[Fraction]], n_cols: int) -> list[list[Fraction]]:
    """Basis of the right nullspace, one vector per free column.

    Each basis vector sets its free variable to 1 and the other free
    variables to 0; entries are exact rationals.
    """
    if not rows:
        return [
            [Fraction(int(i == j)) for i in range(n_cols)] for j in range(n_cols)
        ]
    matrix, pivots = _echelon(_integer_rows(rows))
    pivot_set = set(pivots)
    free_cols = [c for c in range(n_cols) if c not in pivot_set]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * n_cols
        vec[free] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            col = pivots[r]
            acc = Fraction(0)
            for c in range(col + 1, n_cols):
                if vec[c]:
                    acc += matrix[r][c] * vec[c]
            vec[col] = -acc / matrix[r][col]
        basis.append(vec)
    return basis


def solve_linear(
    columns: list[list[Fraction]], target: list[Fraction]
) -> list[Fraction] | None:
    """Solve sum_k x_k * columns[k] = target exactly.

    Returns one solution (free variables set to 0), or None when the system
    is inconsistent.  The system may be overdetermined.
    """
    n_rows = len(target)
    n_cols = len(columns)
    augmented = [
        [columns[k][i] for k in range(n_cols)] + [target[i]] for i in range(n_rows)
    ]
    matrix, pivots = _echelon(_integer_rows(augmented))
    if n_cols in pivots:
        return None
    solution = [Fraction(0)] * n_cols
    for r in range(len(pivots) - 1, -1, -1):
        col = pivots[r]
        acc = Fraction(matrix[r][n_cols])
        for c in range(col + 1, n_cols):
            if solution[c]:
                acc -= matrix[r][c] * solution[c]
        solution[col] = acc / matrix[r][col]
    return solution
