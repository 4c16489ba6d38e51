"""
Lie-theoretic models for the spherical class engine.

This module defines the immutable data models for Cartan types, root systems,
weights, roots and Weyl group elements. Weights are always stored in
fundamental-weight coordinates and roots in simple-root coordinates; the
Cartan matrix is the only conversion device between the two.
"""

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Sequence, Tuple


Vector = Tuple[int, ...]
Matrix = Tuple[Tuple[int, ...], ...]


class TypeLetter(Enum):
    """Letter of a simple Cartan type."""
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"
    F = "F"
    G = "G"


_TYPE_PATTERN = re.compile(r"^\s*([A-Ga-g])\s*_?\s*(\d+)\s*$")


@dataclass(frozen=True)
class CartanType:
    """
    A simple Cartan type such as A3 or E7.

    Attributes:
        letter: Type letter
        rank: Rank of the root system
    """
    letter: TypeLetter
    rank: int

    def __str__(self) -> str:
        return f"{self.letter.value}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        """Parse strings like "E7", "b_5" or "A 2"."""
        match = _TYPE_PATTERN.match(text)
        if match is None:
            raise ValueError(f"Malformed Cartan type: {text!r}")
        return cls(TypeLetter(match.group(1).upper()), int(match.group(2)))

    def to_dict(self) -> Dict[str, Any]:
        return {"letter": self.letter.value, "rank": self.rank}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CartanType":
        return cls(TypeLetter(data["letter"]), int(data["rank"]))


def graded_lex_key(coords: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Sort key: total degree first, then larger leading coordinates first."""
    return (sum(coords), tuple(-c for c in coords))


@dataclass(frozen=True)
class Weight:
    """
    Integral weight in fundamental-weight coordinates.

    Attributes:
        coords: Coefficients n_i of λ = Σ n_i ω_i
    """
    coords: Vector

    @property
    def rank(self) -> int:
        return len(self.coords)

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, k: int) -> "Weight":
        return Weight(tuple(k * c for c in self.coords))

    def dominates(self, other: "Weight") -> bool:
        """Componentwise comparison self >= other."""
        return all(a >= b for a, b in zip(self.coords, other.coords))

    def label(self) -> str:
        """Human readable form such as "2w1+w3"."""
        terms = []
        for index, coeff in enumerate(self.coords, start=1):
            if coeff == 0:
                continue
            prefix = "" if coeff == 1 else ("-" if coeff == -1 else str(coeff))
            terms.append(f"{prefix}w{index}")
        return "+".join(terms).replace("+-", "-") if terms else "0"

    def to_csv(self) -> str:
        return ",".join(str(c) for c in self.coords)

    @classmethod
    def parse(cls, text: str) -> "Weight":
        """Parse comma-separated ω-coordinates such as "0,1,0"."""
        parts = [p.strip() for p in text.split(",")]
        if not parts or any(not re.fullmatch(r"-?\d+", p) for p in parts):
            raise ValueError(f"Malformed weight vector: {text!r}")
        return cls(tuple(int(p) for p in parts))

    @classmethod
    def fundamental(cls, rank: int, index: int) -> "Weight":
        return cls(tuple(1 if i == index else 0 for i in range(1, rank + 1)))

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls((0,) * rank)


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def matrix_product(left: Matrix, right: Matrix) -> Matrix:
    columns = list(zip(*right)) if right else []
    return tuple(
        tuple(sum(a * b for a, b in zip(row, col)) for col in columns)
        for row in left
    )


def matrix_apply(matrix: Matrix, vector: Sequence[int]) -> Vector:
    return tuple(sum(a * b for a, b in zip(row, vector)) for row in matrix)


@dataclass(frozen=True)
class WeylElement:
    """
    Element of the Weyl group as an integer matrix on ω-coordinates.

    Column i of the matrix is the image of ω_i.
    """
    matrix: Matrix

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @classmethod
    def identity(cls, n: int) -> "WeylElement":
        return cls(identity_matrix(n))

    def apply(self, coords: Sequence[int]) -> Vector:
        return matrix_apply(self.matrix, coords)

    def apply_weight(self, weight: Weight) -> Weight:
        return Weight(self.apply(weight.coords))

    def compose(self, other: "WeylElement") -> "WeylElement":
        """Return self ∘ other (other acts first)."""
        return WeylElement(matrix_product(self.matrix, other.matrix))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return self.compose(other)

    def is_identity(self) -> bool:
        return self.matrix == identity_matrix(self.rank)

    def is_involution(self) -> bool:
        return self.compose(self).is_identity()

    def order(self, limit: int = 64) -> int:
        """Order of the element; Weyl groups of rank ≤ 9 stay far below limit."""
        power = self
        for k in range(1, limit + 1):
            if power.is_identity():
                return k
            power = power.compose(self)
        raise ValueError("Matrix does not have finite order within limit")

    def inverse(self) -> "WeylElement":
        result = WeylElement.identity(self.rank)
        for _ in range(self.order() - 1):
            result = result.compose(self)
        return result

    def one_minus(self) -> Matrix:
        """Matrix of 1 − w."""
        n = self.rank
        return tuple(
            tuple((1 if i == j else 0) - self.matrix[i][j] for j in range(n))
            for i in range(n)
        )

    def one_plus(self) -> Matrix:
        """Matrix of 1 + w."""
        n = self.rank
        return tuple(
            tuple((1 if i == j else 0) + self.matrix[i][j] for j in range(n))
            for i in range(n)
        )

    def to_dict(self) -> Dict[str, Any]:
        return {"matrix": [list(row) for row in self.matrix]}


@dataclass(frozen=True)
class RootSystem:
    """
    Root system of one simple type with Bourbaki numbering.

    Attributes:
        cartan_type: Type and rank
        cartan: Cartan matrix with a_ij = <α_i, α_j^∨>
        symmetrizers: d_i = (α_i, α_i)/2 with short roots normalized to 1
        positive_roots: Positive roots in α-coordinates, by height then lex
        highest_root: Highest root in α-coordinates
    """
    cartan_type: CartanType
    cartan: Matrix
    symmetrizers: Vector
    positive_roots: Tuple[Vector, ...]
    highest_root: Vector
    _weight_to_root: Dict[Vector, Vector] = field(
        default_factory=dict, compare=False, repr=False
    )

    def __post_init__(self) -> None:
        lookup: Dict[Vector, Vector] = {}
        for beta in self.positive_roots:
            image = self.root_to_weight(beta)
            lookup[image] = beta
            lookup[tuple(-c for c in image)] = tuple(-c for c in beta)
        object.__setattr__(self, "_weight_to_root", lookup)

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    def simple_root_weight(self, i: int) -> Vector:
        """α_i in ω-coordinates (row i of the Cartan matrix)."""
        return tuple(self.cartan[i - 1])

    def root_to_weight(self, beta: Sequence[int]) -> Vector:
        n = len(self.cartan)
        return tuple(
            sum(beta[i] * self.cartan[i][k] for i in range(n)) for k in range(n)
        )

    def weight_to_root(self, coords: Sequence[int]) -> Optional[Vector]:
        return self._weight_to_root.get(tuple(coords))

    def all_roots(self) -> Tuple[Vector, ...]:
        negatives = tuple(tuple(-c for c in beta) for beta in self.positive_roots)
        return self.positive_roots + negatives

    def is_root(self, beta: Sequence[int]) -> bool:
        return self.weight_to_root(self.root_to_weight(beta)) == tuple(beta)

    def inner(self, beta: Sequence[int], gamma: Sequence[int]) -> int:
        """(β, γ) with (α_i, α_j) = a_ij d_j."""
        n = self.rank
        return sum(
            beta[i] * gamma[j] * self.cartan[i][j] * self.symmetrizers[j]
            for i in range(n)
            for j in range(n)
            if beta[i] and gamma[j]
        )

    def coroot_coordinates(self, beta: Sequence[int]) -> Vector:
        """β^∨ in α^∨-coordinates: c_i = β_i d_i / d_β."""
        half_norm = self.inner(beta, beta) // 2
        coords = []
        for b, d in zip(beta, self.symmetrizers):
            if (b * d) % half_norm:
                raise ValueError(f"Non-integral coroot for {tuple(beta)}")
            coords.append(b * d // half_norm)
        return tuple(coords)

    def pairing(self, coords: Sequence[int], beta: Sequence[int]) -> int:
        """<λ, β^∨> for λ in ω-coordinates."""
        return sum(l * c for l, c in zip(coords, self.coroot_coordinates(beta)))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "cartan_type": str(self.cartan_type),
            "cartan": [list(row) for row in self.cartan],
            "symmetrizers": list(self.symmetrizers),
            "positive_roots": [list(beta) for beta in self.positive_roots],
            "highest_root": list(self.highest_root),
        }
