"""
Catalog models: descriptors of spherical conjugacy classes.

A descriptor records the combinatorial data of one class: the index set J,
a factorization of the involution w into reflections, and the torus subgroups
whose trivial evaluation cuts the weight monoids out of P⁺_w.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

from app.models.lie import CartanType, Vector
from app.models.torus import FiniteTorusSubgroup, format_rational


class ClassKind(Enum):
    """Jordan type of the class representatives."""
    UNIPOTENT = "unipotent"
    SEMISIMPLE = "semisimple"
    MIXED = "mixed"


class ClosureSpecial(Enum):
    """Classes whose closure is not normal."""
    B_ODD_ZMAX = "B_odd_Zmax"
    G2_A1TILDE = "G2_A1tilde"


@dataclass(frozen=True)
class IsogenyEntry:
    """
    Data of a class in the quotient G/D by a central subgroup.

    Attributes:
        tag: Name of the central subgroup D (e.g. "Z" for the full center)
        subgroup: Generators of D
        t_x: Generators of T_{x,D}
        note: Parameter range the entry applies to
    """
    tag: str
    subgroup: FiniteTorusSubgroup
    t_x: FiniteTorusSubgroup
    note: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "tag": self.tag,
            "subgroup": self.subgroup.to_list(),
            "t_x": self.t_x.to_list(),
            "note": self.note,
        }


@dataclass(frozen=True)
class ClassDescriptor:
    """
    One spherical conjugacy class of a simply-connected simple group.

    Attributes:
        group: Cartan type of G
        label: ASCII class label
        kind: Unipotent, semisimple or mixed
        J: Index set with w = w₀ w_J
        w_factors: Roots β_i (α-coordinates) with w = s_{β1}···s_{βk}
        s_O: Supplement of (T^w)° in T_O
        s_O_hat: Same for the simply-connected cover
        normal_closure: Whether the closure is normal
        closure_special: Tag of the non-normal exceptional description
        isogeny_entries: Printed quotient data
        centralizer: Centralizer type of a semisimple representative
        coweight: ℓ of the representative exp(2πi·phase·ω̌_ℓ)
        phase: Phase of the representative; None for one-parameter families
    """
    group: CartanType
    label: str
    kind: ClassKind
    J: Tuple[int, ...]
    w_factors: Tuple[Vector, ...]
    s_O: FiniteTorusSubgroup
    s_O_hat: FiniteTorusSubgroup
    normal_closure: bool = True
    closure_special: Optional[ClosureSpecial] = None
    isogeny_entries: Tuple[IsogenyEntry, ...] = ()
    centralizer: Optional[str] = None
    coweight: Optional[int] = None
    phase: Optional[Fraction] = field(default=None)

    @property
    def class_id(self) -> str:
        return f"{self.group}:{self.label}"

    def isogeny(self, tag: str) -> Optional[IsogenyEntry]:
        return next((e for e in self.isogeny_entries if e.tag == tag), None)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group": str(self.group),
            "label": self.label,
            "kind": self.kind.value,
            "J": list(self.J),
            "w_factors": [list(beta) for beta in self.w_factors],
            "s_O": self.s_O.to_list(),
            "s_O_hat": self.s_O_hat.to_list(),
            "normal": self.normal_closure,
            "closure_special": self.closure_special.value if self.closure_special else None,
            "isogeny": [e.to_dict() for e in self.isogeny_entries],
            "centralizer": self.centralizer,
            "coweight": self.coweight,
            "phase": format_rational(self.phase) if self.phase is not None else None,
        }
