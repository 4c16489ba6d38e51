"""
Weight monoid engine.

Builds the free monoid P⁺_w on the orbit sums ω_S, cuts congruence-constrained
submonoids out of it by trivial evaluation on finite torus subgroups, and
derives the cover, closure and isogeny variants of a class together with the
saturation and chain checks.
"""

import logging
from functools import reduce
from itertools import combinations, product
from math import lcm
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from app.models.catalog import ClassDescriptor, ClosureSpecial
from app.models.lie import RootSystem, Vector, Weight
from app.models.monoid import Variant, WeightMonoid, sort_weights
from app.models.torus import FiniteTorusSubgroup
from app.services import intlat
from app.services.catalog import centralizer_component_order, class_weyl_element
from app.services.errors import MissingIsogenyError, ThetaInvarianceError, UnknownVariantError
from app.services.rootsys import build_root_system, length, theta
from app.services.torus import trivial_on
from app.utils.cache_manager import engine_cache
from app.utils.logging_config import log_performance


logger = logging.getLogger(__name__)


# Enumeration helpers

def compositions(parts: int, total: int) -> Iterator[Vector]:
    """All tuples of `parts` nonnegative integers summing to `total`, lex descending."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for bars in combinations(range(total + parts - 1), parts - 1):
        previous = -1
        values = []
        for bar in bars:
            values.append(bar - previous - 1)
            previous = bar
        values.append(total + parts - 2 - previous)
        yield tuple(values)


def dominant_weights(rank: int, bound: int) -> Iterator[Weight]:
    """Dominant weights with coefficient sum ≤ bound, in degree order."""
    for total in range(bound + 1):
        for coords in compositions(rank, total):
            yield Weight(coords)


def combine(basis: Sequence[Weight], coefficients: Sequence[int]) -> Weight:
    rank = basis[0].rank if basis else 0
    coords = [0] * rank
    for c, b in zip(coefficients, basis):
        if c:
            for i, x in enumerate(b.coords):
                coords[i] += c * x
    return Weight(tuple(coords))


def basis_combinations(basis: Sequence[Weight], bound: int) -> Iterator[Weight]:
    """Σ c_j b_j over coefficient vectors with Σ c_j ≤ bound."""
    for total in range(bound + 1):
        for coefficients in compositions(len(basis), total):
            yield combine(basis, coefficients)


# P⁺_w

def pwplus_basis(R: RootSystem, J: Sequence[int]) -> List[Weight]:
    """
    Basis {ω_S} of P⁺_w for w = w₀w_J, S running over ϑ-orbits in Π∖J.

    Orbits are listed by their smallest index.

    Raises:
        ThetaInvarianceError: J is not stable under ϑ
    """
    th = theta(R)
    J_set = set(J)
    if {th[j - 1] for j in J_set} != J_set:
        raise ThetaInvarianceError(f"J={sorted(J_set)} is not invariant under the diagram symmetry")
    basis = []
    seen = set()
    for i in range(1, R.rank + 1):
        if i in J_set or i in seen:
            continue
        orbit = {i, th[i - 1]}
        seen |= orbit
        basis.append(Weight(tuple(1 if k + 1 in orbit else 0 for k in range(R.rank))))
    return basis


def ambient_coefficients(basis: Sequence[Weight], coords: Sequence[int]) -> Optional[Vector]:
    """
    Coefficients of a weight in a linearly independent basis, or None.

    Orbit-sum bases (disjoint 0/1 supports) are read off directly.
    """
    supports = [[k for k, x in enumerate(b.coords) if x] for b in basis]
    disjoint_unit = all(
        all(b.coords[k] == 1 for k in support) for b, support in zip(basis, supports)
    ) and sum(len(s) for s in supports) == len(set().union(*supports) if supports else set())
    if not disjoint_unit:
        return intlat.solve_integral([b.coords for b in basis], coords)
    coefficients = []
    covered = set()
    for support in supports:
        values = {coords[k] for k in support}
        if len(values) != 1:
            return None
        coefficients.append(values.pop())
        covered.update(support)
    if any(x for k, x in enumerate(coords) if k not in covered):
        return None
    return tuple(coefficients)


def in_pwplus(basis: Sequence[Weight], weight: Weight) -> bool:
    coefficients = ambient_coefficients(basis, weight.coords)
    return coefficients is not None and all(c >= 0 for c in coefficients)


# Constrained monoids

def _phase_orders(basis: Sequence[Weight], S: FiniteTorusSubgroup) -> List[int]:
    return [
        reduce(lcm, (g.phase(b.coords).denominator for g in S.generators), 1)
        for b in basis
    ]


def _admissible(phases: List[Tuple], coefficients: Sequence[int]) -> bool:
    for j in range(len(phases[0]) if phases else 0):
        if sum(c * ph[j] for c, ph in zip(coefficients, phases)) % 1:
            return False
    return True


def _minimal_elements(candidates: Sequence[Vector]) -> List[Vector]:
    """Keep candidates not dominating an earlier kept one (input in degree order)."""
    kept: List[Vector] = []
    for coefficients in candidates:
        if not any(coefficients):
            continue
        if any(all(g <= c for g, c in zip(gen, coefficients)) for gen in kept):
            continue
        kept.append(coefficients)
    return kept


def _constraint_predicate(basis: Tuple[Weight, ...], S: FiniteTorusSubgroup) -> Callable[[Weight], bool]:
    def member(weight: Weight) -> bool:
        if len(weight.coords) != S.rank or not weight.is_dominant():
            return False
        return in_pwplus(basis, weight) and trivial_on(weight, S)

    return member


@log_performance(logger)
def constrained_monoid(
    basis: Sequence[Weight], S: FiniteTorusSubgroup, name: str = ""
) -> WeightMonoid:
    """
    Hilbert basis of {Σ c_j b_j : c_j ∈ N, trivial on S}.

    Every minimal element has c_j ≤ ord_j, the order of the phase vector of b_j
    under the generators of S, so the search runs over that box.
    """
    basis = tuple(basis)
    phases = [tuple(g.phase(b.coords) for g in S.generators) for b in basis]
    orders = _phase_orders(basis, S)
    box = sorted(product(*(range(o + 1) for o in orders)), key=sum)
    admissible = [c for c in box if _admissible(phases, c)]
    generators = [combine(basis, c) for c in _minimal_elements(admissible)]
    logger.debug(
        "Hilbert basis computed",
        extra={"monoid": name, "box": len(box), "generators": len(generators)},
    )
    return WeightMonoid(
        rank=S.rank,
        generators=sort_weights(generators),
        ambient_basis=basis,
        constraints=S.generators,
        membership=_constraint_predicate(basis, S),
        name=name,
    )


# Class variants

def _cached(c: ClassDescriptor, key: str, factory: Callable[[], WeightMonoid]) -> WeightMonoid:
    return engine_cache.get_or_create(f"monoid:{c.class_id}:{key}", factory)


def class_basis(c: ClassDescriptor) -> List[Weight]:
    return pwplus_basis(build_root_system(c.group), c.J)


def lambda_O(c: ClassDescriptor) -> WeightMonoid:
    """λ(O) = {λ ∈ P⁺_w : λ(s_O) = 1}."""
    return _cached(c, "O", lambda: constrained_monoid(class_basis(c), c.s_O, name=f"{c.class_id} O"))


def lambda_O_hat(c: ClassDescriptor) -> WeightMonoid:
    """λ(Ô) for the simply-connected cover."""
    return _cached(
        c, "cover", lambda: constrained_monoid(class_basis(c), c.s_O_hat, name=f"{c.class_id} cover")
    )


def lambda_tilde(c: ClassDescriptor) -> WeightMonoid:
    """
    Zλ(O) ∩ P⁺: dominant weights in the group generated by λ(O).

    Membership is a lattice test; generators are those of λ(O), which equals
    its saturation.
    """
    def build() -> WeightMonoid:
        orbit = lambda_O(c)
        in_group = intlat.membership_test([g.coords for g in orbit.generators], orbit.rank)

        def member(weight: Weight) -> bool:
            return weight.is_dominant() and in_group(weight.coords)

        return WeightMonoid(
            rank=orbit.rank,
            generators=orbit.generators,
            ambient_basis=orbit.ambient_basis,
            membership=member,
            name=f"{c.class_id} tilde",
        )

    return _cached(c, "tilde", build)


def _b_odd_closure_predicate(rank: int) -> Callable[[Weight], bool]:
    m = (rank - 1) // 2

    def member(weight: Weight) -> bool:
        coords = weight.coords
        if len(coords) != rank or not weight.is_dominant():
            return False
        last = coords[rank - 1]
        if last == 0 and sum(coords[2 * i - 2] for i in range(1, m + 1)) % 2 == 0:
            return True
        return last >= 2 and last % 2 == 0

    return member


def irreducible_elements(
    rank: int, member: Callable[[Weight], bool], box: int
) -> List[Weight]:
    """Irreducible elements of a monoid given by a predicate, searched in [0, box]^rank."""
    found: List[Weight] = []
    candidates = sorted(product(range(box + 1), repeat=rank), key=sum)
    for coords in candidates:
        weight = Weight(coords)
        if weight.is_zero() or not member(weight):
            continue
        reducible = any(
            g.coords != coords and weight.dominates(g) and member(weight - g)
            for g in found
        )
        if not reducible:
            found.append(weight)
    return found


def lambda_closure(c: ClassDescriptor) -> WeightMonoid:
    """
    λ of the closure of O.

    Normal closures give λ(O). The two non-normal cases use their explicit
    descriptions: a union of two congruence sets in B_{2m+1}, and the monoid
    generated by 2ω_1, 3ω_1, ω_2 in G_2.
    """
    def build() -> WeightMonoid:
        n = c.group.rank
        if c.normal_closure or c.closure_special is None:
            orbit = lambda_O(c)
            return WeightMonoid(
                rank=orbit.rank,
                generators=orbit.generators,
                ambient_basis=orbit.ambient_basis,
                constraints=orbit.constraints,
                membership=orbit.membership,
                name=f"{c.class_id} closure",
            )
        if c.closure_special is ClosureSpecial.B_ODD_ZMAX:
            member = _b_odd_closure_predicate(n)
            return WeightMonoid(
                rank=n,
                generators=sort_weights(irreducible_elements(n, member, box=2)),
                membership=member,
                name=f"{c.class_id} closure",
            )
        return WeightMonoid.from_generators(
            n,
            [Weight((2, 0)), Weight((3, 0)), Weight((0, 1))],
            name=f"{c.class_id} closure",
        )

    return _cached(c, "closure", build)


def isogeny_subgroup(c: ClassDescriptor, tag: str) -> FiniteTorusSubgroup:
    """D joined with T_{x,D}."""
    entry = c.isogeny(tag)
    if entry is None:
        raise MissingIsogenyError(
            f"No isogeny data '{tag}' for {c.class_id}; "
            f"available: {[e.tag for e in c.isogeny_entries] or 'none'}"
        )
    return entry.subgroup.joined_with(entry.t_x)


def lambda_isogeny(c: ClassDescriptor, tag: str) -> WeightMonoid:
    """
    λ of the image class in G/D.

    Raises:
        MissingIsogenyError: c has no entry for the tag
    """
    S = isogeny_subgroup(c, tag)
    return _cached(
        c, f"isogeny:{tag}",
        lambda: constrained_monoid(class_basis(c), S, name=f"{c.class_id} isogeny:{tag}"),
    )


def monoid_for(c: ClassDescriptor, variant: Variant, tag: Optional[str] = None) -> WeightMonoid:
    if variant is Variant.ORBIT:
        return lambda_O(c)
    if variant is Variant.COVER:
        return lambda_O_hat(c)
    if variant is Variant.CLOSURE:
        return lambda_closure(c)
    if variant is Variant.ISOGENY:
        if not tag:
            raise UnknownVariantError("The isogeny variant needs a tag, e.g. isogeny:Z")
        return lambda_isogeny(c, tag)
    raise UnknownVariantError(f"Unknown variant {variant}")


def available_variants(c: ClassDescriptor) -> List[Tuple[Variant, Optional[str]]]:
    variants: List[Tuple[Variant, Optional[str]]] = [
        (Variant.ORBIT, None), (Variant.COVER, None), (Variant.CLOSURE, None),
    ]
    variants += [(Variant.ISOGENY, e.tag) for e in c.isogeny_entries]
    return variants


def variant_name(variant: Variant, tag: Optional[str]) -> str:
    return f"{variant.value}:{tag}" if tag else variant.value


# Checks

def saturation_check(m: WeightMonoid, bound: int) -> bool:
    """
    Zm ∩ P⁺ = m on the test set.

    The test set is the ω_S combinations with coefficient sum ≤ bound when the
    monoid has an ambient basis, and all dominant weights with coefficient sum
    ≤ bound otherwise.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    in_group = intlat.membership_test([g.coords for g in m.generators], m.rank)
    if m.ambient_basis:
        candidates: Iterator[Weight] = basis_combinations(m.ambient_basis, bound)
    else:
        candidates = dominant_weights(m.rank, bound)
    for weight in candidates:
        if in_group(weight.coords) and not m.contains(weight):
            logger.debug(
                "Saturation fails", extra={"monoid": m.name, "weight": weight.label()}
            )
            return False
    return True


def chain_failures(c: ClassDescriptor, bound: int) -> List[str]:
    """
    Violations of 2P⁺_w ≤ (1−w)P⁺ ≤ λ(closure) ≤ λ(O) ≤ λ̃(O) ≤ P⁺_w.

    Each failure is described by the inclusion and the witness weight.
    """
    w = class_weyl_element(c)
    basis = class_basis(c)
    orbit, tilde, closure = lambda_O(c), lambda_tilde(c), lambda_closure(c)
    failures = []

    for mu in basis_combinations(basis, bound):
        if w.apply(mu.coords) != mu.scale(-1).coords:
            failures.append(f"2P+_w <= (1-w)P+: w({mu.label()}) != -{mu.label()}")

    for weight in dominant_weights(c.group.rank, bound):
        image = weight - w.apply_weight(weight)
        if not image.is_dominant() or not closure.contains(image):
            failures.append(f"(1-w)P+ <= closure: (1-w)({weight.label()}) = {image.label()}")
        if closure.contains(weight) and not orbit.contains(weight):
            failures.append(f"closure <= O: {weight.label()}")
        if orbit.contains(weight) and not tilde.contains(weight):
            failures.append(f"O <= tilde: {weight.label()}")
        if tilde.contains(weight) and not in_pwplus(basis, weight):
            failures.append(f"tilde <= P+_w: {weight.label()}")
    return failures


def chain_check(c: ClassDescriptor, bound: int) -> bool:
    failures = chain_failures(c, bound)
    if failures:
        logger.warning(
            "Chain of inclusions fails",
            extra={"class_id": c.class_id, "first": failures[0], "count": len(failures)},
        )
    return not failures


def class_dimension(c: ClassDescriptor) -> int:
    """dim O = ℓ(w) + rk(1 − w)."""
    R = build_root_system(c.group)
    w = class_weyl_element(c)
    return length(R, w) + intlat.rank(w.one_minus())


def is_model(c: ClassDescriptor, variant: Variant = Variant.ORBIT) -> bool:
    """True iff the monoid of the variant is freely generated by ω_1, ..., ω_n."""
    return monoid_for(c, variant).is_free_on_fundamentals()


def class_statistics(c: ClassDescriptor) -> Dict[str, object]:
    R = build_root_system(c.group)
    w = class_weyl_element(c)
    one_minus = w.one_minus()
    return {
        "dimension": class_dimension(c),
        "length": length(R, w),
        "rank_one_minus_w": intlat.rank(one_minus),
        "torsion": intlat.quotient_torsion(one_minus),
        "component_order": centralizer_component_order(c),
        "normal_closure": c.normal_closure,
        "model": is_model(c),
        "cover_model": is_model(c, Variant.COVER),
    }
