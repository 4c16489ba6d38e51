"""
Root-system and Weyl-group core for the simple types A to G.

Conventions (Bourbaki numbering):
  - a_ij = <α_i, α_j^∨>, so s_j(α_i) = α_i − a_ij α_j and α_i in ω-coordinates
    is row i of the Cartan matrix.
  - d_i = (α_i, α_i)/2 with short roots of length 1, and (α_i, α_j) = a_ij d_j.
  - Weyl group elements act on ω-coordinates; W itself is never enumerated.
"""

import logging
from fractions import Fraction
from typing import Iterable, List, Sequence, Set, Tuple

from app.models.lie import (
    CartanType, Matrix, RootSystem, TypeLetter, Vector, WeylElement,
    identity_matrix, matrix_product,
)
from app.services.errors import (
    InadmissibleTypeError, InvalidWeylElementError, NotInvolutionError,
    RootError,
)
from app.utils.cache_manager import engine_cache
from app.utils.logging_config import log_performance


logger = logging.getLogger(__name__)


_EXCEPTIONAL_ROOT_COUNTS = {
    (TypeLetter.E, 6): 36,
    (TypeLetter.E, 7): 63,
    (TypeLetter.E, 8): 120,
    (TypeLetter.F, 4): 24,
    (TypeLetter.G, 2): 6,
}


def is_admissible(t: CartanType) -> bool:
    n = t.rank
    if t.letter is TypeLetter.A:
        return n >= 1
    if t.letter in (TypeLetter.B, TypeLetter.C):
        return n >= 2
    if t.letter is TypeLetter.D:
        return n >= 4
    return (t.letter, n) in _EXCEPTIONAL_ROOT_COUNTS


def validate_cartan_type(t: CartanType) -> None:
    if not is_admissible(t):
        raise InadmissibleTypeError(t.letter.value, t.rank)


def positive_root_count(letter: TypeLetter, rank: int) -> int:
    """Classical count of positive roots; degenerate ranks give the obvious answer."""
    if rank <= 0:
        return 0
    if letter is TypeLetter.A:
        return rank * (rank + 1) // 2
    if letter in (TypeLetter.B, TypeLetter.C):
        return rank * rank
    if letter is TypeLetter.D:
        return rank * (rank - 1)
    try:
        return _EXCEPTIONAL_ROOT_COUNTS[(letter, rank)]
    except KeyError:
        raise InadmissibleTypeError(letter.value, rank) from None


def _edges(t: CartanType) -> List[Tuple[int, int]]:
    """Dynkin edges (1-indexed), before the non-simply-laced adjustments."""
    n = t.rank
    if t.letter in (TypeLetter.A, TypeLetter.B, TypeLetter.C, TypeLetter.F, TypeLetter.G):
        return [(i, i + 1) for i in range(1, n)]
    if t.letter is TypeLetter.D:
        return [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    # E_n: 1-3-4-5-...-n with 2 attached to 4
    return [(1, 3), (2, 4), (3, 4)] + [(i, i + 1) for i in range(4, n)]


def cartan_matrix(t: CartanType) -> Matrix:
    """Cartan matrix with a_ij = <α_i, α_j^∨>."""
    validate_cartan_type(t)
    n = t.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in _edges(t):
        a[i - 1][j - 1] = -1
        a[j - 1][i - 1] = -1
    if t.letter is TypeLetter.B:
        a[n - 2][n - 1] = -2
    elif t.letter is TypeLetter.C:
        a[n - 1][n - 2] = -2
    elif t.letter is TypeLetter.F:
        a[1][2] = -2
    elif t.letter is TypeLetter.G:
        a[1][0] = -3
    return tuple(tuple(row) for row in a)


def symmetrizers(t: CartanType) -> Vector:
    """Half squared lengths of the simple roots, short roots normalized to 1."""
    validate_cartan_type(t)
    n = t.rank
    if t.letter is TypeLetter.B:
        return (2,) * (n - 1) + (1,)
    if t.letter is TypeLetter.C:
        return (1,) * (n - 1) + (2,)
    if t.letter is TypeLetter.F:
        return (2, 2, 1, 1)
    if t.letter is TypeLetter.G:
        return (1, 3)
    return (1,) * n


def _root_pairing(cartan: Matrix, beta: Sequence[int], i: int) -> int:
    """<β, α_i^∨> for β in α-coordinates."""
    return sum(beta[j] * cartan[j][i] for j in range(len(cartan)))


def _generate_positive_roots(cartan: Matrix) -> List[Vector]:
    """Breadth-first closure under root strings, layer by layer in height."""
    n = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    known: Set[Vector] = set(simple)
    layer = sorted(simple)
    roots: List[Vector] = list(layer)
    while layer:
        next_layer: Set[Vector] = set()
        for beta in layer:
            for i in range(n):
                # q = how far the α_i-string through β extends downwards
                q = 0
                lower = list(beta)
                while True:
                    lower[i] -= 1
                    if tuple(lower) not in known:
                        break
                    q += 1
                p = q - _root_pairing(cartan, beta, i)
                if p > 0:
                    raised = list(beta)
                    raised[i] += 1
                    candidate = tuple(raised)
                    if candidate not in known:
                        next_layer.add(candidate)
        layer = sorted(next_layer)
        known.update(layer)
        roots.extend(layer)
    return roots


def _check_symmetrizable(t: CartanType, cartan: Matrix, d: Vector) -> None:
    n = len(cartan)
    for i in range(n):
        for j in range(n):
            if cartan[i][j] * d[j] != cartan[j][i] * d[i]:
                raise AssertionError(f"Cartan matrix of {t} is not symmetrized by {d}")


@log_performance(logger)
def _build(t: CartanType) -> RootSystem:
    cartan = cartan_matrix(t)
    d = symmetrizers(t)
    _check_symmetrizable(t, cartan, d)
    roots = _generate_positive_roots(cartan)
    expected = positive_root_count(t.letter, t.rank)
    if len(roots) != expected:
        raise AssertionError(
            f"Root closure for {t} produced {len(roots)} roots, expected {expected}"
        )
    highest = max(roots, key=lambda beta: (sum(beta), beta))
    logger.debug(
        "Built root system",
        extra={"cartan_type": str(t), "positive_roots": len(roots)}
    )
    return RootSystem(
        cartan_type=t,
        cartan=cartan,
        symmetrizers=d,
        positive_roots=tuple(roots),
        highest_root=highest,
    )


def build_root_system(t: CartanType) -> RootSystem:
    """
    Build (or fetch from cache) the root system of an admissible type.

    Raises:
        InadmissibleTypeError: Unsupported letter/rank combination
    """
    validate_cartan_type(t)
    return engine_cache.get_or_create(f"rootsys:{t}", lambda: _build(t))


def _check_index(R: RootSystem, i: int) -> None:
    if not 1 <= i <= R.rank:
        raise RootError(f"Simple root index {i} out of range 1..{R.rank} for {R.cartan_type}")


def _check_root(R: RootSystem, beta: Sequence[int]) -> Vector:
    vector = tuple(beta)
    if len(vector) != R.rank or not R.is_root(vector):
        raise RootError(f"{vector} is not a root of {R.cartan_type}")
    return vector


def simple_reflection(R: RootSystem, i: int) -> WeylElement:
    """s_i(λ) = λ − <λ, α_i^∨> α_i on ω-coordinates."""
    _check_index(R, i)
    alpha = R.simple_root_weight(i)
    n = R.rank
    rows = [list(row) for row in identity_matrix(n)]
    for k in range(n):
        rows[k][i - 1] -= alpha[k]
    return WeylElement(tuple(tuple(row) for row in rows))


def reflection_for_root(R: RootSystem, beta: Sequence[int]) -> WeylElement:
    """
    Reflection s_β for a root β given in α-coordinates.

    Raises:
        RootError: β is not a root
    """
    beta = _check_root(R, beta)
    image = R.root_to_weight(beta)
    coroot = R.coroot_coordinates(beta)
    n = R.rank
    return WeylElement(tuple(
        tuple((1 if k == j else 0) - image[k] * coroot[j] for j in range(n))
        for k in range(n)
    ))


def product_of_reflections(R: RootSystem, roots: Iterable[Sequence[int]]) -> WeylElement:
    """s_{β1} s_{β2} ... s_{βk} in the order given."""
    matrix = identity_matrix(R.rank)
    for beta in roots:
        matrix = matrix_product(matrix, reflection_for_root(R, beta).matrix)
    return WeylElement(matrix)


def apply_to_root(R: RootSystem, w: WeylElement, beta: Sequence[int]) -> Vector:
    image = R.weight_to_root(w.apply(R.root_to_weight(beta)))
    if image is None:
        raise InvalidWeylElementError(
            f"Matrix does not map root {tuple(beta)} of {R.cartan_type} to a root"
        )
    return image


def length(R: RootSystem, w: WeylElement) -> int:
    """Number of positive roots sent to negative roots."""
    return sum(
        1 for beta in R.positive_roots
        if sum(apply_to_root(R, w, beta)) < 0
    )


def _longest_in(R: RootSystem, indices: Sequence[int]) -> WeylElement:
    """Move ρ to the antidominant chamber of the parabolic generated by indices."""
    n = R.rank
    allowed = sorted(set(indices))
    for i in allowed:
        _check_index(R, i)
    reflections = {i: simple_reflection(R, i) for i in allowed}
    current = WeylElement.identity(n)
    rho = (1,) * n
    while True:
        image = current.apply(rho)
        step = next((i for i in allowed if image[i - 1] > 0), None)
        if step is None:
            return current
        current = reflections[step].compose(current)


def longest_element(R: RootSystem) -> WeylElement:
    return engine_cache.get_or_create(
        f"w0:{R.cartan_type}", lambda: _longest_in(R, range(1, R.rank + 1))
    )


def parabolic_longest(R: RootSystem, J: Iterable[int]) -> WeylElement:
    """Longest element w_J of the parabolic subgroup W_J."""
    return _longest_in(R, list(J))


def theta(R: RootSystem) -> Tuple[int, ...]:
    """
    Diagram symmetry induced by −w₀, as a tuple with theta[i-1] = ϑ(i).
    """
    w0 = longest_element(R).matrix
    n = R.rank
    result = []
    for i in range(n):
        column = [w0[k][i] for k in range(n)]
        target = [k for k in range(n) if column[k] != 0]
        if len(target) != 1 or column[target[0]] != -1:
            raise AssertionError(f"w0 of {R.cartan_type} is not −(permutation)")
        result.append(target[0] + 1)
    return tuple(result)


def minus_fixed_roots(R: RootSystem, w: WeylElement) -> List[Vector]:
    """
    All roots β (positive and negative) with w(β) = −β.

    Raises:
        NotInvolutionError: w is not an involution
    """
    if not w.is_involution():
        raise NotInvolutionError("minus_fixed_roots requires an involution")
    found = []
    for beta in R.all_roots():
        image = w.apply(R.root_to_weight(beta))
        if all(a == -b for a, b in zip(image, R.root_to_weight(beta))):
            found.append(beta)
    return sorted(found, key=lambda v: (-sum(v), v))


def e_to_alpha(t: CartanType, e_vector: Sequence[int]) -> Vector:
    """
    Convert an integral vector in the standard e-basis of a classical root
    system into simple-root coordinates.

    A_n uses n+1 coordinates; B_n, C_n and D_n use n.

    Raises:
        RootError: wrong length, or the vector is not in the root lattice
    """
    n = t.rank
    v = list(e_vector)
    width = n + 1 if t.letter is TypeLetter.A else n
    if t.letter not in (TypeLetter.A, TypeLetter.B, TypeLetter.C, TypeLetter.D):
        raise RootError(f"No e-coordinates for type {t}")
    if len(v) != width:
        raise RootError(f"Expected {width} e-coordinates for {t}, got {len(v)}")

    partial = [sum(v[:k + 1]) for k in range(width)]
    if t.letter is TypeLetter.A:
        if partial[-1] != 0:
            raise RootError(f"{tuple(v)} does not lie in the root lattice of {t}")
        coords = [Fraction(partial[k]) for k in range(n)]
    elif t.letter is TypeLetter.B:
        coords = [Fraction(partial[k]) for k in range(n)]
    elif t.letter is TypeLetter.C:
        coords = [Fraction(partial[k]) for k in range(n - 1)] + [Fraction(partial[n - 1], 2)]
    else:
        coords = [Fraction(partial[k]) for k in range(n - 2)]
        coords.append(Fraction(partial[n - 2] - v[n - 1], 2))
        coords.append(Fraction(partial[n - 1], 2))

    if any(c.denominator != 1 for c in coords):
        raise RootError(f"{tuple(v)} does not lie in the root lattice of {t}")
    return tuple(int(c) for c in coords)
