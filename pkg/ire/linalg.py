"""Exact rational linear algebra on plain lists of Fractions.

Elimination is delegated to sympy over its Rational field; results come back
as lists of ``Fraction`` so the rest of the package never sees sympy types.
Subspaces are normalized to reduced row echelon form, which makes two bases
of one subspace compare equal. Only the phase-one simplex behind
``feasible_point`` is written out here.
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import sympy

Vector = List[Fraction]
Matrix = List[List[Fraction]]


def _rational(value) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def _fraction(value) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def _to_sympy(rows: Sequence[Sequence], n_cols: Optional[int] = None) -> sympy.Matrix:
    if n_cols is None:
        n_cols = len(rows[0]) if rows else 0
    return sympy.Matrix(len(rows), n_cols, lambda i, j: _rational(rows[i][j]))


def _from_sympy(m: sympy.Matrix) -> Matrix:
    return [[_fraction(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def rref(rows: Sequence[Sequence], n_cols: Optional[int] = None) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns, without touching the input."""
    if not rows:
        return [], []
    reduced, pivots = _to_sympy(rows, n_cols).rref()
    return _from_sympy(reduced), list(pivots)


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return _to_sympy(rows).rank()


def null_space(rows: Sequence[Sequence], n_cols: int) -> Matrix:
    """Basis of {x : rows * x = 0}, one vector per free column, in RREF."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(n_cols)] for i in range(n_cols)]
    columns = _to_sympy(rows, n_cols).nullspace()
    basis = [[_fraction(value) for value in column] for column in columns]
    return span_basis(basis, n_cols)


def span_basis(vectors: Sequence[Sequence], n_cols: int) -> Matrix:
    """Normalized basis (non-zero RREF rows) of the span of ``vectors``."""
    if not vectors:
        return []
    m, pivots = rref(vectors, n_cols)
    return m[: len(pivots)]


def combine(coefficients: Sequence[Fraction], vectors: Sequence[Sequence[Fraction]]) -> Vector:
    """Linear combination sum(c_j * vectors[j])."""
    width = len(vectors[0]) if vectors else 0
    total = [Fraction(0)] * width
    for c, vector in zip(coefficients, vectors):
        if c:
            total = [t + c * value for t, value in zip(total, vector)]
    return total


def _phase_one(rows: Matrix, rhs: Vector) -> Optional[Vector]:
    """Find x >= 0 with rows * x = rhs (rhs >= 0), or None when infeasible.

    Dense tableau simplex on the sum of artificial variables, using Bland's
    rule for both the entering and the leaving variable so it cannot cycle.
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    tableau = [
        list(rows[r]) + [Fraction(int(r == k)) for k in range(m)] + [rhs[r]]
        for r in range(m)
    ]
    basis = [n + r for r in range(m)]
    width = n + m
    cost = [-sum((tableau[r][j] for r in range(m)), Fraction(0)) for j in range(n)]
    cost += [Fraction(0)] * m
    cost.append(-sum(rhs, Fraction(0)))

    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        leaving = None
        best = None
        for r in range(m):
            if tableau[r][entering] > 0:
                ratio = tableau[r][-1] / tableau[r][entering]
                if best is None or ratio < best or (
                    ratio == best and basis[r] < basis[leaving]
                ):
                    best, leaving = ratio, r
        if leaving is None:
            # Phase one is bounded below by zero, so this cannot happen.
            return None
        pivot = tableau[leaving][entering]
        tableau[leaving] = [value / pivot for value in tableau[leaving]]
        for r in range(m):
            factor = tableau[r][entering]
            if r != leaving and factor != 0:
                tableau[r] = [a - factor * b for a, b in zip(tableau[r], tableau[leaving])]
        factor = cost[entering]
        cost = [a - factor * b for a, b in zip(cost, tableau[leaving])]
        basis[leaving] = entering

    if cost[-1] != 0:
        return None
    solution = [Fraction(0)] * width
    for r, j in enumerate(basis):
        solution[j] = tableau[r][-1]
    return solution[:n]


def feasible_point(
    basis: Sequence[Sequence[Fraction]], width: int, floor: Fraction = Fraction(1)
) -> Optional[Vector]:
    """A vector of span(basis) with every coordinate >= floor, or None.

    The span is parametrized as sum(t_j * basis[j]) with free t_j = p_j - q_j,
    and each coordinate gets a surplus variable: sum_j t_j b_jk - s_k = floor.
    """
    if not basis:
        return None if floor > 0 else [Fraction(0)] * width
    k = len(basis)
    rows = []
    for coord in range(width):
        row = [basis[j][coord] for j in range(k)]
        row += [-basis[j][coord] for j in range(k)]
        row += [Fraction(-int(coord == other)) for other in range(width)]
        rows.append(row)
    rhs = [Fraction(floor)] * width
    solution = _phase_one(rows, rhs)
    if solution is None:
        return None
    coefficients = [solution[j] - solution[k + j] for j in range(k)]
    return combine(coefficients, basis)
