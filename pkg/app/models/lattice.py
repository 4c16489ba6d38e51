"""
Integer-lattice models.

Matrices are tuples of integer rows; Python integers are unbounded so no
entry can overflow during elimination.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

from app.models.lie import Matrix


@dataclass(frozen=True)
class SmithDecomposition:
    """
    Smith normal form U·M·V = D.

    Attributes:
        D: Diagonal matrix with nonnegative entries d_1 | d_2 | ...
        U: Unimodular row transform
        V: Unimodular column transform
        U_inv: Inverse of U, tracked during elimination
    """
    D: Matrix
    U: Matrix
    V: Matrix
    U_inv: Matrix

    @property
    def shape(self) -> Tuple[int, int]:
        rows = len(self.D)
        return rows, (len(self.D[0]) if rows else len(self.V))

    @property
    def divisors(self) -> List[int]:
        """Diagonal entries of D."""
        rows, cols = self.shape
        return [self.D[i][i] for i in range(min(rows, cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.divisors if d != 0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "D": [list(row) for row in self.D],
            "U": [list(row) for row in self.U],
            "V": [list(row) for row in self.V],
            "divisors": self.divisors,
        }
