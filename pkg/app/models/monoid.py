"""
Weight monoid model.

A WeightMonoid is a finitely generated submonoid of the dominant weights,
carried both as a generator list (its Hilbert basis) and, when one is known,
as a membership predicate.
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Any, Callable, Dict, Optional, Tuple

from app.models.lie import Vector, Weight, graded_lex_key
from app.models.torus import TorusPoint


class Variant(Enum):
    """Which coordinate ring a monoid describes."""
    ORBIT = "O"
    COVER = "cover"
    CLOSURE = "closure"
    ISOGENY = "isogeny"

    @classmethod
    def parse(cls, text: str) -> Tuple["Variant", Optional[str]]:
        """
        Parse "O", "cover", "closure" or "isogeny:<tag>".

        "Ô", "O_hat" and "Ohat" are accepted for the cover.
        """
        raw = text.strip()
        lowered = raw.lower()
        if lowered in ("o", "orbit"):
            return cls.ORBIT, None
        if lowered in ("cover", "ô", "o_hat", "ohat"):
            return cls.COVER, None
        if lowered == "closure":
            return cls.CLOSURE, None
        if lowered.startswith("isogeny:") and len(raw) > len("isogeny:"):
            return cls.ISOGENY, raw.split(":", 1)[1]
        raise ValueError(f"Unknown variant: {text!r}")


def sort_weights(weights) -> Tuple[Weight, ...]:
    return tuple(sorted(weights, key=lambda w: graded_lex_key(w.coords)))


@dataclass(frozen=True)
class WeightMonoid:
    """
    Finitely generated monoid of dominant weights.

    Attributes:
        rank: Rank of the weight lattice
        generators: Hilbert basis, graded-lex sorted
        ambient_basis: Basis ω_S of P⁺_w the monoid lives in, if known
        constraints: Torus points that must evaluate trivially
        membership: Predicate deciding membership, if known
        name: Short description for logs and output
    """
    rank: int
    generators: Tuple[Weight, ...]
    ambient_basis: Tuple[Weight, ...] = ()
    constraints: Tuple[TorusPoint, ...] = ()
    membership: Optional[Callable[[Weight], bool]] = field(
        default=None, compare=False, repr=False
    )
    name: str = ""

    @classmethod
    def from_generators(cls, rank: int, generators, name: str = "") -> "WeightMonoid":
        """Monoid known only through its generators."""
        return cls(rank=rank, generators=sort_weights(generators), name=name)

    def contains(self, weight: Weight) -> bool:
        """Membership via the predicate, or via the generators when there is none."""
        if self.membership is not None:
            return self.membership(weight)
        return self.generated_contains(weight)

    def generated_contains(self, weight: Weight) -> bool:
        """True iff weight is a nonnegative integer combination of the generators."""
        if len(weight.coords) != self.rank or not weight.is_dominant():
            return False
        return _decomposes(tuple(g.coords for g in self.generators), weight.coords)

    def is_free_on_fundamentals(self) -> bool:
        """Generators are exactly ω_1, ..., ω_n."""
        return set(self.generators) == {Weight.fundamental(self.rank, i) for i in range(1, self.rank + 1)}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "rank": self.rank,
            "generators": [g.label() for g in self.generators],
            "generator_coordinates": [list(g.coords) for g in self.generators],
            "ambient_basis": [b.label() for b in self.ambient_basis],
        }


# Bounds on the memoized decomposition searches: tables kept, states per table.
DECOMPOSITION_TABLES = 1024
DECOMPOSITION_STATES = 65536


@lru_cache(maxsize=DECOMPOSITION_TABLES)
def _decomposition_table(generators: Tuple[Vector, ...]):
    @lru_cache(maxsize=DECOMPOSITION_STATES)
    def search(index: int, remaining: Vector) -> bool:
        if not any(remaining):
            return True
        if index == len(generators):
            return False
        g = generators[index]
        support = [k for k, c in enumerate(g) if c]
        if not support:
            return search(index + 1, remaining)
        most = min(remaining[k] // g[k] for k in support)
        for times in range(most, -1, -1):
            rest = tuple(r - times * c for r, c in zip(remaining, g))
            if search(index + 1, rest):
                return True
        return False

    return search


def _decomposes(generators: Tuple[Vector, ...], target: Vector) -> bool:
    return _decomposition_table(generators)(0, target)
