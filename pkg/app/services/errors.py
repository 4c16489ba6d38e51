"""
Exceptions raised by the engine services.

Every domain error derives from EngineError so the command-line front end can
map them to a single exit status.
"""

from typing import Iterable, List


class EngineError(Exception):
    """Base exception for domain errors."""
    pass


class InadmissibleTypeError(EngineError):
    """Cartan type letter/rank combination that does not exist."""

    def __init__(self, letter: str, rank: int):
        super().__init__(f"Inadmissible Cartan type {letter}{rank}")
        self.letter = letter
        self.rank = rank


class RootError(EngineError):
    """A vector is not a root, or a simple-root index is out of range."""
    pass


class InvalidWeylElementError(EngineError):
    """A matrix does not permute the roots."""
    pass


class NotInvolutionError(EngineError):
    """An operation requiring an involution received something else."""
    pass


class ThetaInvarianceError(EngineError):
    """An index set is not stable under the diagram symmetry."""
    pass


class UnknownGroupError(EngineError):
    """Group string that cannot be parsed as a Cartan type."""
    pass


class UnknownLabelError(EngineError):
    """Class label not present in the catalog of a group."""

    def __init__(self, group: str, label: str, available: Iterable[str]):
        self.available: List[str] = list(available)
        super().__init__(
            f"Unknown class {label!r} for {group}; available: "
            + ", ".join(self.available)
        )
        self.group = group
        self.label = label


class UnknownVariantError(EngineError):
    """Monoid variant name that is not recognised."""
    pass


class MissingIsogenyError(EngineError):
    """No isogeny data stored for the requested class and central subgroup."""
    pass


class CatalogDataError(EngineError):
    """Static catalog data failed schema or invariant validation."""
    pass


class WeightFormatError(EngineError):
    """Weight vector string is malformed or has the wrong length."""
    pass
