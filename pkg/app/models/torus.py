"""
Finite-order torus elements.

A TorusPoint with coordinates q (in the simple-coroot basis) stands for the
element exp(2πi q) of the maximal torus of the simply-connected group. Since
the coroot lattice is the cocharacter lattice, q is only defined modulo 1 in
each coordinate and is stored reduced into [0, 1).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Any, Dict, FrozenSet, Iterable, List, Sequence, Tuple


def parse_rational(value: Any) -> Fraction:
    """Accept ints, Fractions and strings such as "1/2"."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(str(value).strip())


def format_rational(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class TorusPoint:
    """
    Torus element exp(2πi q).

    Attributes:
        q: Coordinates in the α^∨ basis, reduced modulo 1
    """
    q: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", tuple(parse_rational(x) % 1 for x in self.q))

    @classmethod
    def from_values(cls, values: Iterable[Any]) -> "TorusPoint":
        return cls(tuple(parse_rational(v) for v in values))

    @classmethod
    def identity(cls, rank: int) -> "TorusPoint":
        return cls((Fraction(0),) * rank)

    @property
    def rank(self) -> int:
        return len(self.q)

    @property
    def order(self) -> int:
        return reduce(lcm, (x.denominator for x in self.q), 1)

    def is_identity(self) -> bool:
        return not any(self.q)

    def __add__(self, other: "TorusPoint") -> "TorusPoint":
        """Group product of two torus elements."""
        return TorusPoint(tuple(a + b for a, b in zip(self.q, other.q)))

    def __neg__(self) -> "TorusPoint":
        return TorusPoint(tuple(-a for a in self.q))

    def power(self, k: int) -> "TorusPoint":
        return TorusPoint(tuple(k * a for a in self.q))

    def phase(self, coords: Sequence[int]) -> Fraction:
        """<λ, q> mod 1 for λ in ω-coordinates."""
        return sum((c * a for c, a in zip(coords, self.q)), Fraction(0)) % 1

    def to_list(self) -> List[str]:
        return [format_rational(x) for x in self.q]


@dataclass(frozen=True)
class FiniteTorusSubgroup:
    """
    Subgroup of the torus generated by finitely many finite-order points.

    Attributes:
        rank: Rank of the ambient torus
        generators: Generating points
    """
    rank: int
    generators: Tuple[TorusPoint, ...] = ()

    @classmethod
    def trivial(cls, rank: int) -> "FiniteTorusSubgroup":
        return cls(rank, ())

    @classmethod
    def generated_by(cls, rank: int, points: Iterable[TorusPoint]) -> "FiniteTorusSubgroup":
        return cls(rank, tuple(points))

    def elements(self) -> FrozenSet[TorusPoint]:
        """All elements, by closure of the generators."""
        found = {TorusPoint.identity(self.rank)}
        frontier = list(found)
        while frontier:
            fresh = []
            for point in frontier:
                for g in self.generators:
                    product = point + g
                    if product not in found:
                        found.add(product)
                        fresh.append(product)
            frontier = fresh
        return frozenset(found)

    def order(self) -> int:
        return len(self.elements())

    def contains(self, point: TorusPoint) -> bool:
        return point in self.elements()

    def is_subgroup_of(self, other: "FiniteTorusSubgroup") -> bool:
        ambient = other.elements()
        return all(g in ambient for g in self.generators)

    def same_as(self, other: "FiniteTorusSubgroup") -> bool:
        return self.elements() == other.elements()

    def joined_with(self, other: "FiniteTorusSubgroup") -> "FiniteTorusSubgroup":
        return FiniteTorusSubgroup(self.rank, self.generators + other.generators)

    def to_list(self) -> List[List[str]]:
        return [g.to_list() for g in self.generators]

    def to_dict(self) -> Dict[str, Any]:
        return {"rank": self.rank, "generators": self.to_list()}
