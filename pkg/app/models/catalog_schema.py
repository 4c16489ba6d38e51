"""
Schema of the static catalog files for the exceptional groups.

The JSON files under app/data are validated with these models when loaded;
the semantic invariants (roots, involutions, w = w₀w_J) are checked later by
the catalog service.
"""

import re
from fractions import Fraction
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")

RationalVector = List[str]


def _check_rational_vectors(vectors: List[RationalVector]) -> List[RationalVector]:
    for vector in vectors:
        for entry in vector:
            if not _RATIONAL.match(entry.strip()):
                raise ValueError(f"Not a rational number: {entry!r}")
            if Fraction(entry).denominator not in (1, 2, 3, 4):
                raise ValueError(f"Unexpected torus element order in {entry!r}")
    return vectors


class IsogenySchema(BaseModel):
    """Quotient data for one central subgroup."""
    model_config = ConfigDict(extra="forbid")

    tag: str = Field(min_length=1)
    subgroup: List[RationalVector]
    t_x: List[RationalVector]
    note: str = ""

    @field_validator("subgroup", "t_x")
    @classmethod
    def rational_entries(cls, value: List[RationalVector]) -> List[RationalVector]:
        return _check_rational_vectors(value)


class CatalogEntrySchema(BaseModel):
    """One class of an exceptional group."""
    model_config = ConfigDict(extra="forbid")

    label: str = Field(min_length=1)
    kind: Literal["unipotent", "semisimple", "mixed"]
    J: List[int]
    w_factors: List[List[int]] = Field(min_length=1)
    s_O: List[RationalVector]
    s_O_hat: List[RationalVector]
    normal: bool = True
    closure_special: Optional[Literal["B_odd_Zmax", "G2_A1tilde"]] = None
    isogeny: List[IsogenySchema] = Field(default_factory=list)
    centralizer: Optional[str] = None
    coweight: Optional[int] = None
    phase: Optional[str] = None

    @field_validator("s_O", "s_O_hat")
    @classmethod
    def rational_entries(cls, value: List[RationalVector]) -> List[RationalVector]:
        return _check_rational_vectors(value)

    @field_validator("label")
    @classmethod
    def label_is_ascii(cls, value: str) -> str:
        if not value.isascii():
            raise ValueError(f"Label must be ASCII: {value!r}")
        return value

    @model_validator(mode="after")
    def semisimple_data(self) -> "CatalogEntrySchema":
        if self.kind == "semisimple" and (self.centralizer is None or self.coweight is None):
            raise ValueError(f"Semisimple class {self.label} needs centralizer and coweight")
        if self.closure_special is not None and self.normal:
            raise ValueError(f"Class {self.label} has a closure tag but is marked normal")
        return self


class CatalogFileSchema(BaseModel):
    """A whole data file: one exceptional group."""
    model_config = ConfigDict(extra="forbid")

    group: str
    rank: int = Field(ge=2, le=8)
    classes: List[CatalogEntrySchema] = Field(min_length=1)

    @model_validator(mode="after")
    def vector_lengths(self) -> "CatalogFileSchema":
        labels = [entry.label for entry in self.classes]
        if len(labels) != len(set(labels)):
            raise ValueError(f"Duplicate labels in {self.group}")
        for entry in self.classes:
            vectors = list(entry.w_factors) + list(entry.s_O) + list(entry.s_O_hat)
            for iso in entry.isogeny:
                vectors += list(iso.subgroup) + list(iso.t_x)
            for vector in vectors:
                if len(vector) != self.rank:
                    raise ValueError(
                        f"{self.group} {entry.label}: vector {vector} has length "
                        f"{len(vector)}, expected {self.rank}"
                    )
            if any(not 1 <= j <= self.rank for j in entry.J):
                raise ValueError(f"{self.group} {entry.label}: J out of range")
        return self
