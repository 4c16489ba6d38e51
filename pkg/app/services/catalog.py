"""
Catalog of spherical conjugacy classes.

Classical groups are generated by rank; exceptional groups are read from the
JSON files in app/data, validated against their schema and then against the
descriptor invariants before use.
"""

import json
import logging
import re
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from pydantic import ValidationError

from app.models.catalog import ClassDescriptor, ClassKind, ClosureSpecial, IsogenyEntry
from app.models.catalog_schema import CatalogEntrySchema, CatalogFileSchema
from app.models.lie import CartanType, RootSystem, TypeLetter, WeylElement
from app.models.torus import FiniteTorusSubgroup, TorusPoint
from app.services import intlat
from app.services.classical import classical_classes
from app.services.errors import (
    CatalogDataError, EngineError, UnknownGroupError, UnknownLabelError,
)
from app.services.rootsys import (
    build_root_system, is_admissible, length, longest_element,
    parabolic_longest, positive_root_count, product_of_reflections, theta,
    validate_cartan_type,
)
from app.services.torus import centralizer_roots
from app.utils.cache_manager import engine_cache


logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

_EXCEPTIONAL_FILES = {
    "E6": "e6.json",
    "E7": "e7.json",
    "E8": "e8.json",
    "F4": "f4.json",
    "G2": "g2.json",
}


def parse_group(text: str) -> CartanType:
    """Parse and validate a group name such as "C3"."""
    try:
        t = CartanType.parse(text)
    except ValueError as e:
        raise UnknownGroupError(str(e)) from None
    validate_cartan_type(t)
    return t


def list_groups(rank_max: int = 8) -> List[CartanType]:
    """Every admissible simple type with rank ≤ rank_max, in A..G order."""
    groups = []
    for letter in TypeLetter:
        for rank in range(1, rank_max + 1):
            t = CartanType(letter, rank)
            if is_admissible(t):
                groups.append(t)
    return groups


# Label normalization

_UNICODE_REPLACEMENTS = [
    ("Ã_1", "A1tilde"), ("Ã1", "A1tilde"), ("Ã", "Atilde"),
    ("ω̌", "w"), ("ω", "w"), ("π", "pi"), ("ζ", "zeta"), ("σ", "sigma"),
    ("β", "beta"), ("α", "alpha"), ("′′", "''"), ("″", "''"), ("′", "'"),
    ("·", "*"),
]


def normalize_label(label: str) -> str:
    """Comparison key: Unicode mapped to ASCII, whitespace/underscores/case ignored."""
    text = label
    for source, target in _UNICODE_REPLACEMENTS:
        text = text.replace(source, target)
    return re.sub(r"[\s_]+", "", text).lower()


# Exceptional data

def _subgroup(rank: int, vectors: List[List[str]]) -> FiniteTorusSubgroup:
    return FiniteTorusSubgroup(rank, tuple(TorusPoint.from_values(v) for v in vectors))


def _descriptor_from_entry(t: CartanType, entry: CatalogEntrySchema) -> ClassDescriptor:
    n = t.rank
    return ClassDescriptor(
        group=t,
        label=entry.label,
        kind=ClassKind(entry.kind),
        J=tuple(sorted(entry.J)),
        w_factors=tuple(tuple(beta) for beta in entry.w_factors),
        s_O=_subgroup(n, entry.s_O),
        s_O_hat=_subgroup(n, entry.s_O_hat),
        normal_closure=entry.normal,
        closure_special=ClosureSpecial(entry.closure_special) if entry.closure_special else None,
        isogeny_entries=tuple(
            IsogenyEntry(
                tag=iso.tag,
                subgroup=_subgroup(n, iso.subgroup),
                t_x=_subgroup(n, iso.t_x),
                note=iso.note,
            )
            for iso in entry.isogeny
        ),
        centralizer=entry.centralizer,
        coweight=entry.coweight,
        phase=Fraction(entry.phase) if entry.phase is not None else None,
    )


def load_exceptional(t: CartanType, path: Optional[Path] = None) -> List[ClassDescriptor]:
    """
    Read and schema-validate the data file of an exceptional group.

    Raises:
        CatalogDataError: unreadable file or schema violation
    """
    path = path or DATA_DIR / _EXCEPTIONAL_FILES[str(t)]
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
        parsed = CatalogFileSchema.model_validate(raw)
    except (OSError, json.JSONDecodeError) as e:
        raise CatalogDataError(f"Cannot read catalog file {path}: {e}") from e
    except ValidationError as e:
        raise CatalogDataError(f"Catalog file {path} failed validation: {e}") from e
    if parsed.group != str(t) or parsed.rank != t.rank:
        raise CatalogDataError(f"Catalog file {path} describes {parsed.group}, expected {t}")
    return [_descriptor_from_entry(t, entry) for entry in parsed.classes]


# Invariants

_CENTRALIZER_TOKEN = re.compile(r"([ABCDEFGT])(\d+)")


def centralizer_root_count(label: str) -> int:
    """Positive roots of a product of simple types written like "T1A2A3" or "A1E7"."""
    total = 0
    for letter, rank in _CENTRALIZER_TOKEN.findall(label.replace("tilde", "")):
        if letter != "T":
            total += positive_root_count(TypeLetter(letter), int(rank))
    return total


def class_weyl_element(c: ClassDescriptor) -> WeylElement:
    """w = s_{β1}···s_{βk}, memoized per class."""
    R = build_root_system(c.group)
    return engine_cache.get_or_create(
        f"w:{c.class_id}", lambda: product_of_reflections(R, c.w_factors)
    )


def descriptor_problems(c: ClassDescriptor, R: Optional[RootSystem] = None) -> List[str]:
    """
    All violated descriptor invariants, as human readable strings.

    An empty list means the descriptor is consistent.
    """
    R = R or build_root_system(c.group)
    problems = []
    for beta in c.w_factors:
        if len(beta) != R.rank or not R.is_root(beta):
            problems.append(f"factor {beta} is not a root")
    if problems:
        return problems

    w = class_weyl_element(c)
    if not w.is_involution():
        problems.append("w is not an involution")
    expected = longest_element(R).compose(parabolic_longest(R, c.J))
    if w != expected:
        problems.append("w differs from w0*w_J")
    th = theta(R)
    if set(th[j - 1] for j in c.J) != set(c.J):
        problems.append(f"J={list(c.J)} is not invariant under the diagram symmetry")
    if (length(R, w) + intlat.rank(w.one_minus())) % 2:
        problems.append("l(w) + rk(1-w) is odd")
    if not c.s_O_hat.is_subgroup_of(c.s_O):
        problems.append("s_O_hat is not contained in s_O")
    if c.closure_special is not None and c.normal_closure:
        problems.append("closure tag on a class marked normal")

    if c.kind is ClassKind.SEMISIMPLE and c.centralizer and c.coweight:
        found = len(centralizer_roots(R, c.coweight, c.phase))
        wanted = centralizer_root_count(c.centralizer)
        if found != wanted:
            problems.append(
                f"centralizer {c.centralizer} has {wanted} positive roots, "
                f"representative gives {found}"
            )
    return problems


def _validated(t: CartanType, classes: List[ClassDescriptor]) -> Tuple[ClassDescriptor, ...]:
    R = build_root_system(t)
    for c in classes:
        problems = descriptor_problems(c, R)
        if problems:
            raise CatalogDataError(f"{c.class_id}: " + "; ".join(problems))
    labels = [normalize_label(c.label) for c in classes]
    if len(labels) != len(set(labels)):
        raise CatalogDataError(f"Ambiguous labels in catalog of {t}")
    return tuple(classes)


def _build_catalog(t: CartanType) -> Tuple[ClassDescriptor, ...]:
    if t.letter in (TypeLetter.A, TypeLetter.B, TypeLetter.C, TypeLetter.D):
        classes = classical_classes(t)
    else:
        classes = load_exceptional(t)
    catalog = _validated(t, classes)
    logger.info("Catalog ready", extra={"group": str(t), "classes": len(catalog)})
    return catalog


def instantiate(t: CartanType) -> List[ClassDescriptor]:
    """All non-central spherical classes of the simply-connected group of type t."""
    validate_cartan_type(t)
    return list(engine_cache.get_or_create(f"catalog:{t}", lambda: _build_catalog(t)))


def lookup(t: CartanType, label: str) -> ClassDescriptor:
    """
    Find a class by label.

    Raises:
        UnknownLabelError: no class with that label; the message lists all labels
    """
    classes = instantiate(t)
    key = normalize_label(label)
    for c in classes:
        if normalize_label(c.label) == key:
            return c
    raise UnknownLabelError(str(t), label, [c.label for c in classes])


def centralizer_component_order(c: ClassDescriptor) -> int:
    """|C(x)/C(x)°| = |<s_O>| / |<s_O_hat>|."""
    big, small = c.s_O.order(), c.s_O_hat.order()
    if big % small:
        raise EngineError(f"{c.class_id}: |s_O| is not a multiple of |s_O_hat|")
    return big // small


def catalog_index(groups: List[CartanType]) -> Dict[str, List[str]]:
    return {str(t): [c.label for c in instantiate(t)] for t in groups}
