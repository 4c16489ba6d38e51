"""
Exact integer-lattice algebra.

Smith normal form with deterministic pivoting (smallest nonzero absolute value
first, ties broken in row-major order), and the lattice operations derived from
it: kernels, images, quotient torsion and integral solving.
"""

import logging
from typing import Callable, List, Optional, Sequence, Tuple

from app.models.lattice import SmithDecomposition
from app.models.lie import Matrix, Vector, identity_matrix


logger = logging.getLogger(__name__)


def _to_rows(matrix: Sequence[Sequence[int]]) -> List[List[int]]:
    rows = [list(map(int, row)) for row in matrix]
    if rows and any(len(row) != len(rows[0]) for row in rows):
        raise ValueError("Ragged integer matrix")
    return rows


def _freeze(rows: List[List[int]]) -> Matrix:
    return tuple(tuple(row) for row in rows)


def _find_pivot(a: List[List[int]], t: int) -> Optional[Tuple[int, int]]:
    best = None
    best_value = 0
    for i in range(t, len(a)):
        for j in range(t, len(a[i])):
            value = abs(a[i][j])
            if value and (best is None or value < best_value):
                best, best_value = (i, j), value
    return best


class _Elimination:
    """Row/column operations applied to A while recording U, U⁻¹ and V."""

    def __init__(self, matrix: List[List[int]], cols: int):
        self.a = matrix
        m = len(matrix)
        self.u = [list(row) for row in identity_matrix(m)]
        self.u_inv = [list(row) for row in identity_matrix(m)]
        self.v = [list(row) for row in identity_matrix(cols)]

    def swap_rows(self, i: int, k: int) -> None:
        if i == k:
            return
        self.a[i], self.a[k] = self.a[k], self.a[i]
        self.u[i], self.u[k] = self.u[k], self.u[i]
        for row in self.u_inv:
            row[i], row[k] = row[k], row[i]

    def swap_cols(self, j: int, k: int) -> None:
        if j == k:
            return
        for row in self.a:
            row[j], row[k] = row[k], row[j]
        for row in self.v:
            row[j], row[k] = row[k], row[j]

    def add_row(self, target: int, source: int, factor: int) -> None:
        """row_target += factor * row_source."""
        for row in (self.a, self.u):
            row[target] = [x + factor * y for x, y in zip(row[target], row[source])]
        for row in self.u_inv:
            row[source] -= factor * row[target]

    def add_col(self, target: int, source: int, factor: int) -> None:
        """col_target += factor * col_source."""
        for rows in (self.a, self.v):
            for row in rows:
                row[target] += factor * row[source]

    def negate_row(self, i: int) -> None:
        self.a[i] = [-x for x in self.a[i]]
        self.u[i] = [-x for x in self.u[i]]
        for row in self.u_inv:
            row[i] = -row[i]


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SmithDecomposition:
    """
    Compute U, V unimodular and D diagonal with U·M·V = D.

    The diagonal is nonnegative and forms a divisibility chain. An empty
    matrix gives an empty decomposition.
    """
    a = _to_rows(matrix)
    m = len(a)
    n = len(a[0]) if m else 0
    ops = _Elimination(a, n)

    for t in range(min(m, n)):
        pivot = _find_pivot(a, t)
        if pivot is None:
            break
        ops.swap_rows(t, pivot[0])
        ops.swap_cols(t, pivot[1])

        while True:
            clean = True
            for r in range(t + 1, m):
                if a[r][t]:
                    ops.add_row(r, t, -(a[r][t] // a[t][t]))
                    clean = clean and a[r][t] == 0
            for c in range(t + 1, n):
                if a[t][c]:
                    ops.add_col(c, t, -(a[t][c] // a[t][t]))
                    clean = clean and a[t][c] == 0
            if not clean:
                pivot = _find_pivot(a, t)
                ops.swap_rows(t, pivot[0])
                ops.swap_cols(t, pivot[1])
                continue

            offender = next(
                (
                    r for r in range(t + 1, m)
                    for c in range(t + 1, n)
                    if a[r][c] % a[t][t]
                ),
                None,
            )
            if offender is None:
                break
            ops.add_row(t, offender, 1)

        if a[t][t] < 0:
            ops.negate_row(t)

    return SmithDecomposition(
        D=_freeze(a),
        U=_freeze(ops.u),
        V=_freeze(ops.v),
        U_inv=_freeze(ops.u_inv),
    )


def elementary_divisors(matrix: Sequence[Sequence[int]]) -> List[int]:
    return smith_normal_form(matrix).divisors


def rank(matrix: Sequence[Sequence[int]]) -> int:
    return smith_normal_form(matrix).rank


def kernel_basis(matrix: Sequence[Sequence[int]]) -> List[Vector]:
    """Lattice basis of {x ∈ Z^n : M x = 0}."""
    snf = smith_normal_form(matrix)
    _, cols = snf.shape
    r = snf.rank
    return [tuple(snf.V[i][j] for i in range(cols)) for j in range(r, cols)]


def image_basis(matrix: Sequence[Sequence[int]]) -> List[Vector]:
    """Lattice basis of M·Z^n, read off as d_i times column i of U⁻¹."""
    snf = smith_normal_form(matrix)
    rows, _ = snf.shape
    return [
        tuple(d * snf.U_inv[k][i] for k in range(rows))
        for i, d in enumerate(snf.divisors)
        if d != 0
    ]


def quotient_torsion(matrix: Sequence[Sequence[int]]) -> List[int]:
    """Elementary divisors that are neither 0 nor 1."""
    return [d for d in elementary_divisors(matrix) if d not in (0, 1)]


def columns_matrix(vectors: Sequence[Sequence[int]], length: int) -> Matrix:
    """Matrix whose columns are the given vectors."""
    return tuple(tuple(v[i] for v in vectors) for i in range(length))


def _solve_with(snf: SmithDecomposition, k: int, target: Sequence[int]) -> Optional[Vector]:
    n = len(target)
    transformed = [sum(u * t for u, t in zip(row, target)) for row in snf.U]
    y = [0] * k
    for i in range(n):
        d = snf.D[i][i] if i < k else 0
        if d == 0:
            if transformed[i] != 0:
                return None
        elif transformed[i] % d:
            return None
        else:
            y[i] = transformed[i] // d
    return tuple(sum(snf.V[j][i] * y[i] for i in range(k)) for j in range(k))


def solve_integral(vectors: Sequence[Sequence[int]], target: Sequence[int]) -> Optional[Vector]:
    """
    Integer coefficients x with Σ x_j vectors[j] = target, or None.

    When the vectors are linearly independent the solution is unique.
    """
    if not vectors:
        return () if not any(target) else None
    snf = smith_normal_form(columns_matrix(vectors, len(target)))
    return _solve_with(snf, len(vectors), target)


def membership_test(vectors: Sequence[Sequence[int]], length: int) -> Callable[[Sequence[int]], bool]:
    """Lattice membership predicate sharing one Smith form across queries."""
    if not vectors:
        return lambda target: not any(target)
    snf = smith_normal_form(columns_matrix(vectors, length))
    k = len(vectors)
    return lambda target: _solve_with(snf, k, target) is not None


def lattice_contains(basis: Sequence[Sequence[int]], vector: Sequence[int]) -> bool:
    return solve_integral(basis, vector) is not None


def same_lattice(first: Sequence[Sequence[int]], second: Sequence[Sequence[int]]) -> bool:
    """True when both families span the same sublattice."""
    return (
        all(lattice_contains(first, v) for v in second)
        and all(lattice_contains(second, v) for v in first)
    )
