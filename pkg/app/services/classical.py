"""
Spherical conjugacy classes of the classical groups, generated by rank.

Reflection factors are written in the standard e-basis and converted to
simple-root coordinates; torus data is written as products of h_{α}(−1).
"""

import logging
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence

from app.models.catalog import ClassDescriptor, ClassKind, ClosureSpecial, IsogenyEntry
from app.models.lie import CartanType, TypeLetter, Vector
from app.models.torus import FiniteTorusSubgroup
from app.services.rootsys import e_to_alpha
from app.services.torus import (
    QUARTER, center, coroot_point, h_minus_one, h_minus_one_each, odd_indices,
)


logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


class _FamilyBuilder:
    """Shared helpers for one classical group."""

    def __init__(self, t: CartanType):
        self.t = t
        self.n = t.rank
        self.width = self.n + 1 if t.letter is TypeLetter.A else self.n
        self.classes: List[ClassDescriptor] = []

    def e(self, *terms: int) -> Vector:
        """Root from signed 1-indexed e-basis positions, e.g. e(1, -4) = e_1 − e_4."""
        v = [0] * self.width
        for term in terms:
            v[abs(term) - 1] += 1 if term > 0 else -1
        return e_to_alpha(self.t, v)

    def twice(self, index: int) -> Vector:
        v = [0] * self.width
        v[index - 1] = 2
        return e_to_alpha(self.t, v)

    def simple(self, index: int) -> Vector:
        return tuple(1 if i == index else 0 for i in range(1, self.n + 1))

    def free(self) -> FiniteTorusSubgroup:
        return FiniteTorusSubgroup.trivial(self.n)

    def h(self, *indices: int) -> FiniteTorusSubgroup:
        """Cyclic subgroup generated by the product of h_{α_j}(−1)."""
        if not indices:
            return self.free()
        return FiniteTorusSubgroup(self.n, (h_minus_one(self.n, *indices),))

    def h_each(self, indices: Iterable[int]) -> FiniteTorusSubgroup:
        return h_minus_one_each(self.n, indices)

    def add(
        self,
        label: str,
        kind: ClassKind,
        J: Iterable[int],
        factors: Sequence[Vector],
        s_O: FiniteTorusSubgroup,
        s_O_hat: Optional[FiniteTorusSubgroup] = None,
        **extra,
    ) -> None:
        if s_O_hat is None:
            s_O_hat = s_O if kind is ClassKind.SEMISIMPLE else self.free()
        self.classes.append(ClassDescriptor(
            group=self.t,
            label=label,
            kind=kind,
            J=tuple(sorted(J)),
            w_factors=tuple(factors),
            s_O=s_O,
            s_O_hat=s_O_hat,
            **extra,
        ))

    def semisimple(
        self,
        label: str,
        J: Iterable[int],
        factors: Sequence[Vector],
        s_O: FiniteTorusSubgroup,
        centralizer: str,
        coweight: int,
        phase: Optional[Fraction],
        **extra,
    ) -> None:
        self.add(
            label, ClassKind.SEMISIMPLE, J, factors, s_O, s_O,
            centralizer=centralizer, coweight=coweight, phase=phase, **extra,
        )


def _interval(low: int, high: int) -> List[int]:
    return list(range(low, high + 1))


def _type_a(t: CartanType) -> List[ClassDescriptor]:
    b = _FamilyBuilder(t)
    n = t.rank
    m = (n + 1) // 2
    beta = [b.e(i, -(n + 2 - i)) for i in range(1, m + 1)]

    for l in range(1, m + 1):
        J = _interval(l + 1, n - l) if l < m else []
        if l == m and n + 1 == 2 * m:
            s_O = b.h(m)
        else:
            s_O = b.free()
        b.add(f"X_{l}", ClassKind.UNIPOTENT, J, beta[:l], s_O, b.free())
        b.semisimple(
            f"exp(zeta w{l})", J, beta[:l], s_O,
            centralizer=f"T1A{l - 1}A{n - l}", coweight=l, phase=None,
        )
    return b.classes


def _type_c(t: CartanType) -> List[ClassDescriptor]:
    b = _FamilyBuilder(t)
    n = t.rank
    p = n // 2
    beta = [b.twice(i) for i in range(1, n + 1)]
    gamma = [b.e(2 * i - 1, 2 * i) for i in range(1, p + 1)]

    def J(i: int) -> List[int]:
        return _interval(i + 1, n)

    def sigma(k: int) -> List[int]:
        return [2 * i - 1 for i in range(1, k + 1)]

    for l in range(1, n + 1):
        b.add(
            f"X_{l}", ClassKind.UNIPOTENT, J(l), beta[:l],
            b.h_each(range(1, l + 1)), b.h_each(range(1, l)),
        )

    for l in range(1, p + 1):
        K = sigma(l) + _interval(2 * l + 1, n)
        b.semisimple(
            f"exp(pi i w{l})", K, gamma[:l], b.free(),
            centralizer=f"C{l}C{n - l}", coweight=l, phase=HALF,
        )
    b.semisimple(
        "exp(zeta w1)", J(2), beta[:2], b.h(1),
        centralizer=f"T1C{n - 1}", coweight=1, phase=None,
    )
    b.semisimple(
        f"exp(zeta w{n})", [], beta, b.h_each(range(1, n + 1)),
        centralizer=f"T1A{n - 1}tilde", coweight=n, phase=None,
    )

    b.add(
        f"sigma_{p}*x_alpha{n}(1)", ClassKind.MIXED, [], beta,
        b.h(*odd_indices(n)), b.free(),
    )
    for k in range(1, p):
        b.add(
            f"sigma_{k}*x_alpha{n}(1)", ClassKind.MIXED, J(2 * k + 1), beta[:2 * k + 1],
            b.h(*sigma(k + 1)), b.free(),
        )
    for k in range(1, p + 1):
        b.add(
            f"sigma_{k}*x_beta1(1)", ClassKind.MIXED, J(2 * k), beta[:2 * k],
            b.h(*sigma(k)), b.free(),
        )
    return b.classes


def _orthogonal_roots(b: _FamilyBuilder, m: int):
    beta = [b.e(2 * i - 1, 2 * i) for i in range(1, m + 1)]
    delta = [b.e(2 * i - 1, -2 * i) for i in range(1, m + 1)]
    interleaved = []
    for bi, di in zip(beta, delta):
        interleaved.extend([bi, di])
    return beta, interleaved


def _type_d(t: CartanType) -> List[ClassDescriptor]:
    b = _FamilyBuilder(t)
    n = t.rank
    m = n // 2
    even = n % 2 == 0
    beta, beta_delta = _orthogonal_roots(b, m)

    def J(l: int) -> List[int]:
        return _interval(2 * l + 1, n) if l < m else []

    def K(l: int) -> List[int]:
        return J(l) + odd_indices(2 * l - 1)

    def sigma(l: int) -> FiniteTorusSubgroup:
        return b.h(*odd_indices(2 * l - 1))

    for l in range(1, m + 1):
        if l < m:
            s_O = sigma(l)
        elif even:
            s_O = center(t)
        else:
            s_O = sigma(m)
        b.add(f"Z_{l}", ClassKind.UNIPOTENT, J(l), beta_delta[:2 * l], s_O, b.free())

    for l in range(1, m + 1):
        s_O = b.h(n) if (l == m and even) else b.free()
        b.add(f"X_{l}", ClassKind.UNIPOTENT, K(l), beta[:l], s_O, b.free())

    prime_J = odd_indices(n - 3) + [n]
    prime_factors = beta[:m - 1] + [b.simple(n - 1)]
    if even:
        b.add(f"X_{m}'", ClassKind.UNIPOTENT, prime_J, prime_factors, b.h(n - 1), b.free())

    b.semisimple(
        "exp(zeta w1)", J(1), beta_delta[:2], b.h(1),
        centralizer=f"T1D{n - 1}", coweight=1, phase=None,
    )
    for l in range(2, m + 1):
        if l < m:
            s_O = b.h_each(range(1, 2 * l))
        elif even:
            s_O = b.h_each(range(1, n + 1))
        else:
            s_O = b.h_each(range(1, n - 1))
        extra = {}
        if l == m and even:
            extra["isogeny_entries"] = (_pso_entry(b),)
        b.semisimple(
            f"exp(pi i w{l})", J(l), beta_delta[:2 * l], s_O,
            centralizer=f"D{l}D{n - l}", coweight=l, phase=HALF, **extra,
        )
    b.semisimple(
        f"exp(zeta w{n})", K(m), beta, b.h(n) if even else b.free(),
        centralizer=f"T1A{n - 1}", coweight=n, phase=None,
    )
    if even:
        b.semisimple(
            f"exp(zeta w{n - 1})", prime_J, prime_factors, b.h(n - 1),
            centralizer=f"(T1A{n - 1})'", coweight=n - 1, phase=None,
        )
    return b.classes


def _pso_entry(b: _FamilyBuilder) -> IsogenyEntry:
    """exp(πiω̌_m) in PSO(4m): D = Z(G)."""
    n = b.n
    z = center(b.t)
    order_four = (
        coroot_point(n, {n - 1: QUARTER, n: QUARTER}),
        coroot_point(n, {i: QUARTER for i in odd_indices(n - 1)}),
    )
    t_x = FiniteTorusSubgroup(n, b.h_each(range(1, n + 1)).generators + order_four)
    return IsogenyEntry(tag="Z", subgroup=z, t_x=t_x, note="projective orthogonal group PSO(2n), n even")


def _type_b(t: CartanType) -> List[ClassDescriptor]:
    b = _FamilyBuilder(t)
    n = t.rank
    m = n // 2
    even = n % 2 == 0
    beta, beta_delta = _orthogonal_roots(b, m)
    gamma = [b.e(i) for i in range(1, n + 1)]

    def J(l: int) -> List[int]:
        return _interval(2 * l + 1, n)

    def K(l: int) -> List[int]:
        return J(l) + odd_indices(2 * l - 1)

    def M(k: int) -> List[int]:
        return _interval(k + 1, n)

    def sigma(l: int) -> FiniteTorusSubgroup:
        return b.h(*odd_indices(2 * l - 1))

    if even:
        for l in range(1, m + 1):
            s_O = b.h(n) if l == m else b.free()
            b.add(f"X_{l}", ClassKind.UNIPOTENT, K(l), beta[:l], s_O, b.free())
        for l in range(1, m + 1):
            if l < m:
                b.add(f"Z_{l}", ClassKind.UNIPOTENT, J(l), beta_delta[:2 * l], sigma(l), b.free())
            else:
                s_O = sigma(m).joined_with(b.h(n))
                b.add(f"Z_{l}", ClassKind.UNIPOTENT, [], beta_delta, s_O, b.h(n))
    else:
        for l in range(1, m + 1):
            b.add(f"X_{l}", ClassKind.UNIPOTENT, K(l), beta[:l], b.free(), b.free())
        for l in range(1, m + 1):
            b.add(f"Z_{l}", ClassKind.UNIPOTENT, J(l), beta_delta[:2 * l], sigma(l), b.free())
        b.add(
            f"Z_{m + 1}", ClassKind.UNIPOTENT, [], beta_delta + [b.simple(n)],
            b.h(n), b.free(),
            normal_closure=False, closure_special=ClosureSpecial.B_ODD_ZMAX,
        )

    if n == 2:
        b.semisimple(
            "exp(zeta w1)", [], beta_delta, b.h_each([1, 2]),
            centralizer="T1B1", coweight=1, phase=None,
        )
    else:
        b.semisimple(
            "exp(zeta w1)", J(1), beta_delta[:2], b.h(1),
            centralizer=f"T1B{n - 1}", coweight=1, phase=None,
        )

    for l in range(2, n + 1):
        if l <= m:
            factors = beta_delta[:2 * l]
            if even and l == m:
                J_l, s_O = [], b.h_each(range(1, n + 1))
            else:
                J_l, s_O = J(l), b.h_each(range(1, 2 * l))
        elif not even and l == m + 1:
            J_l, factors, s_O = [], gamma, b.h_each(range(1, n + 1))
        else:
            k = 2 * (n - l) + 1
            J_l, factors, s_O = M(k), gamma[:k], b.h_each(range(1, k))
        b.semisimple(
            f"exp(pi i w{l})", J_l, factors, s_O,
            centralizer=f"D{l}B{n - l}", coweight=l, phase=HALF,
        )

    b.semisimple(
        f"exp(zeta w{n})", [], gamma, b.h(n),
        centralizer=f"T1A{n - 1}", coweight=n, phase=None,
    )

    for l in range(1, m + 1):
        label = f"sigma_{n}*x_beta(1..{l})"
        if l < m:
            b.add(label, ClassKind.MIXED, M(2 * l + 1), gamma[:2 * l + 1], b.free(), b.free())
        elif even:
            b.add(label, ClassKind.MIXED, [], gamma, b.h(n), b.free())
        else:
            b.add(label, ClassKind.MIXED, M(n), gamma, b.h(n), b.h(n))
    return b.classes


_BUILDERS: dict = {
    TypeLetter.A: _type_a,
    TypeLetter.B: _type_b,
    TypeLetter.C: _type_c,
    TypeLetter.D: _type_d,
}


def classical_classes(t: CartanType) -> List[ClassDescriptor]:
    """All spherical classes of a classical group, in catalog order."""
    builder: Callable[[CartanType], List[ClassDescriptor]] = _BUILDERS[t.letter]
    classes = builder(t)
    logger.debug("Generated classical classes", extra={"group": str(t), "count": len(classes)})
    return classes
