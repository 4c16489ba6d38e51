"""
Verification service.

Compares the monoid engine with a first-principles oracle that only reads the
class involution w and the torus data of the descriptor, reproduces the
connectedness pattern of T^{s_α}, and runs the structural checks of every
class. Classes are independent and are verified concurrently.
"""

import asyncio
import time
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from typing import Iterable, List, Optional, Tuple

import structlog

from app.models.catalog import ClassDescriptor, ClosureSpecial
from app.models.lie import CartanType, TypeLetter, Weight, matrix_apply
from app.models.monoid import Variant, WeightMonoid
from app.models.report import Mismatch, VerificationReport, VerificationSummary
from app.models.torus import FiniteTorusSubgroup
from app.services.catalog import (
    class_weyl_element, descriptor_problems, instantiate, list_groups, lookup, parse_group,
)
from app.services.errors import MissingIsogenyError
from app.services.monoid import (
    available_variants, chain_failures, dominant_weights, lambda_closure, lambda_O,
    lambda_O_hat, monoid_for, saturation_check, variant_name,
)
from app.services.rootsys import build_root_system, reflection_for_root
from app.services.torus import component_group_of_Tw, trivial_on


logger = structlog.get_logger(__name__)


# Oracle

def _oracle_subgroup(c: ClassDescriptor, variant: Variant, tag: Optional[str]) -> FiniteTorusSubgroup:
    if variant is Variant.COVER:
        return c.s_O_hat
    if variant is Variant.ISOGENY:
        entry = c.isogeny(tag or "")
        if entry is None:
            raise MissingIsogenyError(f"No isogeny data '{tag}' for {c.class_id}")
        return entry.subgroup.joined_with(entry.t_x)
    return c.s_O


def _printed_closure(c: ClassDescriptor, weight: Weight) -> bool:
    coords = weight.coords
    n = len(coords)
    if c.closure_special is ClosureSpecial.G2_A1TILDE:
        return coords[0] != 1
    m = (n - 1) // 2
    odd_part = sum(coords[i] for i in range(0, 2 * m, 2))
    if coords[n - 1] == 0 and odd_part % 2 == 0:
        return True
    return coords[n - 1] % 2 == 0 and coords[n - 1] >= 2


def oracle_membership(
    c: ClassDescriptor, weight: Weight, variant: Variant, tag: Optional[str] = None
) -> bool:
    """
    Membership decided from w and the torus data alone.

    λ belongs to the O, cover and isogeny monoids iff (1 + w)λ = 0 and λ is
    trivial on the relevant torus subgroup. Non-normal closures use their
    explicit descriptions.
    """
    if not weight.is_dominant():
        return False
    if variant is Variant.CLOSURE and not c.normal_closure:
        return _printed_closure(c, weight)
    w = class_weyl_element(c)
    if any(matrix_apply(w.one_plus(), weight.coords)):
        return False
    return trivial_on(weight, _oracle_subgroup(c, variant, tag))


# Per-class verification

def verify_class(c: ClassDescriptor, bound: int) -> VerificationReport:
    """
    Engine membership (generator decomposition) against the oracle on every
    dominant weight with coefficient sum ≤ bound, for every variant of c.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    log = logger.bind(class_id=c.class_id, bound=bound)
    start = time.perf_counter()
    weights = list(dominant_weights(c.group.rank, bound))
    mismatches: List[Mismatch] = []
    names = []
    for variant, tag in available_variants(c):
        name = variant_name(variant, tag)
        names.append(name)
        m = monoid_for(c, variant, tag)
        for weight in weights:
            expected = oracle_membership(c, weight, variant, tag)
            got = m.generated_contains(weight)
            if expected != got:
                mismatches.append(Mismatch(subject=weight.label(), variant=name, expected=expected, got=got))
    elapsed = time.perf_counter() - start
    report = VerificationReport(
        class_id=c.class_id,
        checked_bound=bound,
        variants=names,
        checked=len(weights) * len(names),
        mismatches=mismatches,
        elapsed=elapsed,
    )
    if mismatches:
        log.warning("class verification failed", mismatches=len(mismatches))
    else:
        log.debug("class verified", checked=report.checked, elapsed=round(elapsed, 4))
    return report


def _structure(subject: str, detail: str = "") -> Mismatch:
    return Mismatch(subject=subject, variant="structure", expected=True, got=False, detail=detail)


def _generators_negated(m: WeightMonoid, c: ClassDescriptor) -> List[str]:
    w = class_weyl_element(c)
    return [g.label() for g in m.generators if w.apply(g.coords) != g.scale(-1).coords]


def _redundant_generators(m: WeightMonoid) -> List[str]:
    redundant = []
    for g in m.generators:
        others = WeightMonoid.from_generators(m.rank, [h for h in m.generators if h != g])
        if others.generated_contains(g):
            redundant.append(g.label())
    return redundant


def verify_structure(
    c: ClassDescriptor, chain_bound: int = 4, saturation_bound: int = 6
) -> VerificationReport:
    """Descriptor invariants, the chain of inclusions, saturation and minimality."""
    start = time.perf_counter()
    mismatches = [_structure("descriptor", p) for p in descriptor_problems(c)]
    if mismatches:
        return VerificationReport(c.class_id, chain_bound, ["structure"], 1, mismatches,
                                  time.perf_counter() - start)

    mismatches += [_structure("chain", f) for f in chain_failures(c, chain_bound)]
    for label, m in (("O", lambda_O(c)), ("cover", lambda_O_hat(c))):
        if not saturation_check(m, saturation_bound):
            mismatches.append(_structure("saturation", f"lambda({label}) is not saturated"))
        for g in _generators_negated(m, c):
            mismatches.append(_structure("eigenspace", f"{label}: w({g}) != -{g}"))
        for g in _redundant_generators(m):
            mismatches.append(_structure("minimality", f"{label}: {g} is redundant"))

    orbit, closure = lambda_O(c), lambda_closure(c)
    differs = any(
        orbit.contains(weight) != closure.contains(weight)
        for weight in dominant_weights(c.group.rank, chain_bound)
    )
    if differs == c.normal_closure:
        mismatches.append(_structure(
            "normality", f"closure differs from O: {differs}, normal flag: {c.normal_closure}"
        ))

    return VerificationReport(
        class_id=c.class_id,
        checked_bound=max(chain_bound, saturation_bound),
        variants=["structure"],
        checked=1,
        mismatches=mismatches,
        elapsed=time.perf_counter() - start,
    )


# Connectedness of T^{s_α}

def _root_lengths(t: CartanType) -> List[Tuple[str, int]]:
    """One simple root index per root length, long first."""
    d = build_root_system(t).symmetrizers
    long_index = d.index(max(d)) + 1
    if min(d) == max(d):
        return [("long", long_index)]
    return [("long", long_index), ("short", d.index(min(d)) + 1)]


def reflection_fixed_torus_disconnected(t: CartanType, length_name: str) -> bool:
    """Expected answer: A_1, long roots of C_n, long roots of B_2."""
    if t.letter is TypeLetter.A and t.rank == 1:
        return True
    if length_name != "long":
        return False
    return t.letter is TypeLetter.C or (t.letter is TypeLetter.B and t.rank == 2)


def verify_minima(rank_max: int = 8) -> VerificationReport:
    """T^{s_α} is disconnected exactly for A_1, C_n with α long and B_2 with α long."""
    start = time.perf_counter()
    mismatches = []
    checked = 0
    for t in list_groups(rank_max):
        R = build_root_system(t)
        for length_name, index in _root_lengths(t):
            alpha = tuple(1 if k == index else 0 for k in range(1, t.rank + 1))
            divisors = component_group_of_Tw(reflection_for_root(R, alpha))
            expected = reflection_fixed_torus_disconnected(t, length_name)
            got = bool(divisors)
            checked += 1
            if expected != got:
                mismatches.append(Mismatch(
                    subject=f"{t} {length_name}", variant="minima",
                    expected=expected, got=got, detail=f"divisors {divisors}",
                ))
    return VerificationReport(
        class_id="minima",
        checked_bound=rank_max,
        variants=["minima"],
        checked=checked,
        mismatches=mismatches,
        elapsed=time.perf_counter() - start,
    )


# Concurrent fan-out

def verify_worker(group: str, label: str, bound: int, structure: bool = False,
                  chain_bound: int = 4) -> VerificationReport:
    """Top-level entry point so process pools can pickle it."""
    c = lookup(parse_group(group), label)
    report = verify_class(c, bound)
    if structure:
        report = report.merge(verify_structure(c, chain_bound=chain_bound, saturation_bound=bound))
    return report


class VerificationService:
    """
    Runs class verifications concurrently on a thread or process pool.

    Reports are merged by class id, so the result does not depend on
    completion order.
    """

    def __init__(self, workers: int = 4, executor: str = "thread",
                 bound: int = 6, chain_bound: int = 4):
        if executor not in ("thread", "process"):
            raise ValueError(f"Unknown executor kind: {executor}")
        self.workers = workers
        self.executor_kind = executor
        self.bound = bound
        self.chain_bound = chain_bound

    def _executor(self) -> Executor:
        if self.executor_kind == "process":
            return ProcessPoolExecutor(max_workers=self.workers)
        return ThreadPoolExecutor(max_workers=self.workers)

    async def verify_catalog(
        self, groups: Iterable[CartanType], structure: bool = False, minima: bool = False
    ) -> VerificationSummary:
        start = time.perf_counter()
        jobs = [(str(t), c.label) for t in groups for c in instantiate(t)]
        log = logger.bind(classes=len(jobs), workers=self.workers, executor=self.executor_kind)
        log.info("verification started", bound=self.bound)

        loop = asyncio.get_running_loop()
        with self._executor() as pool:
            futures = [
                loop.run_in_executor(
                    pool, verify_worker, group, label, self.bound, structure, self.chain_bound
                )
                for group, label in jobs
            ]
            reports = list(await asyncio.gather(*futures))

        if minima:
            reports.append(verify_minima())
        summary = VerificationSummary.merged(reports, elapsed=time.perf_counter() - start)
        log.info(
            "verification finished",
            passed=summary.passed,
            mismatches=summary.mismatch_count,
            elapsed=round(summary.elapsed, 3),
        )
        return summary


async def verify_catalog(
    groups: Iterable[CartanType], bound: int = 6, workers: int = 4,
    executor: str = "thread", structure: bool = False, minima: bool = False,
) -> VerificationSummary:
    service = VerificationService(workers=workers, executor=executor, bound=bound)
    return await service.verify_catalog(groups, structure=structure, minima=minima)
