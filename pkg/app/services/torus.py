"""
Torus bookkeeping: evaluation of weights on finite-order torus elements,
centers of simply-connected groups, and the structure of T^w.

h_{α_j}(z) with z = exp(2πi r) is the point r·α_j^∨, so h_{α_j}(−1) has
coordinate ½ at j and h_{α_j}(±i) has ¼ or ¾.
"""

import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from app.models.lie import CartanType, RootSystem, TypeLetter, Weight, WeylElement
from app.models.torus import FiniteTorusSubgroup, TorusPoint
from app.services import intlat
from app.services.errors import NotInvolutionError, RootError
from app.services.rootsys import build_root_system, validate_cartan_type


logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def coroot_point(rank: int, values: Dict[int, Fraction]) -> TorusPoint:
    """Point with the given α^∨-coordinates (1-indexed), zero elsewhere."""
    return TorusPoint(tuple(values.get(i, Fraction(0)) for i in range(1, rank + 1)))


def h_minus_one(rank: int, *indices: int) -> TorusPoint:
    """Product h_{α_j}(−1) over the given indices."""
    point = TorusPoint.identity(rank)
    for j in indices:
        point = point + coroot_point(rank, {j: HALF})
    return point


def h_minus_one_each(rank: int, indices: Iterable[int]) -> FiniteTorusSubgroup:
    """Subgroup generated by the separate elements h_{α_j}(−1)."""
    return FiniteTorusSubgroup(rank, tuple(h_minus_one(rank, j) for j in indices))


def eval_phase(weight: Weight, point: TorusPoint) -> Fraction:
    """<λ, q> mod 1; zero means λ(t) = 1."""
    return point.phase(weight.coords)


def trivial_on(weight: Weight, subgroup: FiniteTorusSubgroup) -> bool:
    return all(g.phase(weight.coords) == 0 for g in subgroup.generators)


def root_phase(R: RootSystem, beta: Sequence[int], point: TorusPoint) -> Fraction:
    """Evaluation of the root β (α-coordinates) on a torus point."""
    return point.phase(R.root_to_weight(beta))


def fundamental_coweight(R: RootSystem, index: int) -> Tuple[Fraction, ...]:
    """
    ω̌_ℓ in α^∨-coordinates, i.e. the solution q of <α_j, q> = δ_jℓ.

    Solved exactly through the Smith form of the Cartan matrix:
    A = U⁻¹ D V⁻¹, so q = V D⁻¹ U e_ℓ.
    """
    if not 1 <= index <= R.rank:
        raise RootError(f"Coweight index {index} out of range for {R.cartan_type}")
    snf = intlat.smith_normal_form(R.cartan)
    n = R.rank
    rhs = [snf.U[i][index - 1] for i in range(n)]
    y = [Fraction(rhs[i], snf.D[i][i]) for i in range(n)]
    return tuple(sum((snf.V[k][i] * y[i] for i in range(n)), Fraction(0)) for k in range(n))


def exp_coweight(R: RootSystem, index: int, phase: Fraction) -> TorusPoint:
    """The element exp(2πi · phase · ω̌_ℓ)."""
    return TorusPoint(tuple(phase * x for x in fundamental_coweight(R, index)))


def center_from_cartan(R: RootSystem) -> FiniteTorusSubgroup:
    """
    Z(G) as {q : A q ∈ Z^n} mod Z^n, generated by the columns of V
    divided by the nontrivial elementary divisors of A.
    """
    snf = intlat.smith_normal_form(R.cartan)
    n = R.rank
    generators = []
    for i, d in enumerate(snf.divisors):
        if d > 1:
            generators.append(TorusPoint(tuple(Fraction(snf.V[k][i], d) for k in range(n))))
    return FiniteTorusSubgroup(n, tuple(generators))


def odd_indices(upper: int) -> List[int]:
    return list(range(1, upper + 1, 2))


def center(t: CartanType) -> FiniteTorusSubgroup:
    """
    Center of the simply-connected group of type t.

    Types B, C, D and E_7 use the standard products of h_{α}(−1) and h_{α}(±i);
    A_n and E_6 are derived from the Cartan matrix; E_8, F_4, G_2 are trivial.
    """
    validate_cartan_type(t)
    n = t.rank
    if t.letter is TypeLetter.C:
        return FiniteTorusSubgroup(n, (h_minus_one(n, *odd_indices(n)),))
    if t.letter is TypeLetter.B:
        return FiniteTorusSubgroup(n, (h_minus_one(n, n),))
    if t.letter is TypeLetter.D:
        m = n // 2
        if n % 2 == 0:
            return FiniteTorusSubgroup(n, (
                h_minus_one(n, *odd_indices(n - 1)),
                h_minus_one(n, n - 1, n),
            ))
        values = {i: HALF for i in odd_indices(2 * m - 1)}
        values[n - 1] = QUARTER
        values[n] = 3 * QUARTER
        return FiniteTorusSubgroup(n, (coroot_point(n, values),))
    if t.letter is TypeLetter.E and n == 7:
        return FiniteTorusSubgroup(n, (h_minus_one(n, 2, 5, 7),))
    if t.letter is TypeLetter.A or (t.letter is TypeLetter.E and n == 6):
        return center_from_cartan(build_root_system(t))
    return FiniteTorusSubgroup.trivial(n)


def center_order(t: CartanType) -> int:
    return center(t).order()


def _require_involution(w: WeylElement) -> None:
    if not w.is_involution():
        raise NotInvolutionError("Expected an involution")


def fixed_torus_rank(w: WeylElement) -> int:
    """dim T^w = n − rank(1 − w)."""
    _require_involution(w)
    return w.rank - intlat.rank(w.one_minus())


def component_group_of_Tw(w: WeylElement) -> List[int]:
    """Invariant factors of T^w / (T^w)°, i.e. the torsion of P/(1−w)P."""
    _require_involution(w)
    return intlat.quotient_torsion(w.one_minus())


def centralizer_roots(
    R: RootSystem, index: int, phase: Optional[Fraction]
) -> List[Tuple[int, ...]]:
    """
    Positive roots of the centralizer of exp(2πi · phase · ω̌_ℓ).

    With phase None the element is a generic point of the one-parameter
    family, whose centralizer is the Levi subgroup dropping node ℓ.
    """
    found = []
    for beta in R.positive_roots:
        coefficient = beta[index - 1]
        if phase is None:
            if coefficient == 0:
                found.append(beta)
        elif (phase * coefficient).denominator == 1:
            found.append(beta)
    return found
