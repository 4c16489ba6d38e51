"""Tests for the oracle, structural checks and the concurrent verification run."""

import json

import pytest

from app.models.lie import CartanType, Weight
from app.models.monoid import Variant
from app.models.report import Mismatch, VerificationReport, VerificationSummary
from app.services.catalog import instantiate, list_groups
from app.services.errors import MissingIsogenyError
from app.services.rootsys import build_root_system, reflection_for_root
from app.services.torus import component_group_of_Tw
from app.services.verify import (
    VerificationService, oracle_membership, reflection_fixed_torus_disconnected,
    verify_catalog, verify_class, verify_minima, verify_structure, verify_worker,
)


def W(*coords):
    return Weight(tuple(coords))


class TestOracle:
    def test_e7_4a1(self, klass):
        c = klass("E7", "4A1")
        assert not oracle_membership(c, W(0, 1, 0, 0, 0, 0, 0), Variant.ORBIT)
        assert oracle_membership(c, W(0, 1, 0, 0, 1, 0, 0), Variant.ORBIT)
        assert oracle_membership(c, W(0, 1, 0, 0, 0, 0, 0), Variant.COVER)

    def test_b5_z3_closure(self, klass):
        c = klass("B5", "Z_3")
        assert not oracle_membership(c, W(0, 0, 0, 0, 1), Variant.CLOSURE)
        assert oracle_membership(c, W(0, 0, 0, 0, 2), Variant.CLOSURE)

    def test_g2_closure(self, klass):
        c = klass("G2", "A1tilde")
        assert not oracle_membership(c, W(1, 0), Variant.CLOSURE)
        assert oracle_membership(c, W(1, 0), Variant.ORBIT)

    def test_not_in_eigenspace(self, klass):
        # w acts by -1 only on the line through ω1
        c = klass("C3", "X_1")
        assert not oracle_membership(c, W(0, 0, 2), Variant.COVER)

    def test_negative_weight(self, klass):
        assert not oracle_membership(klass("E8", "4A1"), W(-1, 0, 0, 0, 0, 0, 0, 1), Variant.ORBIT)

    def test_unknown_isogeny(self, klass):
        with pytest.raises(MissingIsogenyError):
            oracle_membership(klass("C3", "X_2"), W(2, 0, 0), Variant.ISOGENY, "Z")


class TestVerifyClass:
    @pytest.mark.parametrize("group,label", [
        ("C4", "X_2"),
        ("D6", "Z_3"),
        ("B3", "Z_2"),
        ("G2", "A1tilde"),
        ("E7", "exp(zeta w7)"),
        ("F4", "f2*x_beta1(1)"),
    ])
    def test_engine_agrees_with_oracle(self, klass, group, label):
        report = verify_class(klass(group, label), 4)
        assert report.passed, report.mismatches
        assert report.checked > 0
        assert "O" in report.variants

    def test_isogeny_variant_is_checked(self, klass):
        report = verify_class(klass("E7", "exp(pi i w2)"), 3)
        assert "isogeny:Z" in report.variants
        assert report.passed

    def test_bound_must_be_positive(self, klass):
        with pytest.raises(ValueError):
            verify_class(klass("A2", "X_1"), 0)

    @pytest.mark.parametrize("group", ["A5", "B4", "C3", "D5", "G2"])
    def test_structure(self, group):
        for c in instantiate(CartanType.parse(group)):
            report = verify_structure(c, chain_bound=4, saturation_bound=6)
            assert report.passed, (c.class_id, report.mismatches)

    def test_worker_merges_structure(self):
        report = verify_worker("C3", "X_2", 3, structure=True, chain_bound=3)
        assert report.class_id == "C3:X_2"
        assert "structure" in report.variants
        assert report.passed


class TestMinima:
    @pytest.mark.parametrize("group,length,expected", [
        ("A1", "long", True),
        ("A2", "long", False),
        ("B2", "long", True),
        ("B2", "short", False),
        ("B3", "long", False),
        ("C3", "long", True),
        ("C3", "short", False),
        ("G2", "long", False),
    ])
    def test_expected_pattern(self, group, length, expected):
        assert reflection_fixed_torus_disconnected(CartanType.parse(group), length) is expected

    def test_a1_component_group(self):
        R = build_root_system(CartanType.parse("A1"))
        assert component_group_of_Tw(reflection_for_root(R, (1,))) == [2]

    def test_e8_reflection_has_connected_fixed_torus(self):
        R = build_root_system(CartanType.parse("E8"))
        alpha = (1, 0, 0, 0, 0, 0, 0, 0)
        assert component_group_of_Tw(reflection_for_root(R, alpha)) == []

    def test_catalog_pattern(self):
        report = verify_minima(rank_max=8)
        assert report.class_id == "minima"
        assert report.passed, report.mismatches


class TestReports:
    def test_merge_by_class(self):
        a = VerificationReport("C3:X_2", 4, ["O"], 10, [], 0.5)
        b = VerificationReport("C3:X_2", 6, ["structure"], 1,
                               [Mismatch("chain", "structure", True, False)], 0.25)
        c = VerificationReport("A2:X_1", 4, ["O"], 5)
        summary = VerificationSummary.merged([a, c, b], elapsed=1.0)
        assert [r.class_id for r in summary.reports] == ["A2:X_1", "C3:X_2"]
        merged = summary.reports[1]
        assert merged.checked_bound == 6
        assert merged.variants == ["O", "structure"]
        assert merged.checked == 11
        assert not summary.passed
        assert summary.mismatch_count == 1

    def test_sorted_json(self):
        summary = VerificationSummary.merged([VerificationReport("A1:X_1", 2, ["O"], 3)])
        document = summary.to_sorted_json()
        data = json.loads(document)
        assert data["passed"] is True
        assert data["mismatch_count"] == 0
        assert data["reports"][0]["class_id"] == "A1:X_1"
        assert document.index('"elapsed"') < document.index('"mismatch_count"')


class TestVerificationService:
    def test_rejects_unknown_executor(self):
        with pytest.raises(ValueError):
            VerificationService(executor="fiber")

    @pytest.mark.asyncio
    async def test_thread_pool_run(self):
        service = VerificationService(workers=2, executor="thread", bound=3, chain_bound=3)
        summary = await service.verify_catalog([CartanType.parse("B3"), CartanType.parse("G2")])
        assert summary.passed
        ids = [r.class_id for r in summary.reports]
        assert ids == sorted(ids)
        assert "G2:A1tilde" in ids

    @pytest.mark.asyncio
    async def test_order_independent(self):
        groups = [CartanType.parse("A3"), CartanType.parse("C2")]
        first = await verify_catalog(groups, bound=3, workers=1)
        second = await verify_catalog(list(reversed(groups)), bound=3, workers=3)
        assert [r.class_id for r in first.reports] == [r.class_id for r in second.reports]
        assert [r.checked for r in first.reports] == [r.checked for r in second.reports]

    @pytest.mark.asyncio
    async def test_minima_appended(self):
        summary = await verify_catalog([CartanType.parse("A1")], bound=2, workers=1, minima=True)
        assert "minima" in [r.class_id for r in summary.reports]
        assert summary.passed


@pytest.mark.slow
class TestFullCatalog:
    @pytest.mark.asyncio
    async def test_every_class_up_to_rank_eight(self):
        summary = await verify_catalog(list_groups(8), bound=6, workers=4, structure=True, minima=True)
        assert summary.mismatch_count == 0, [
            (r.class_id, m.subject, m.variant) for r in summary.reports for m in r.mismatches
        ]
        assert summary.passed
        assert "minima" in [r.class_id for r in summary.reports]
        assert all(r.checked_bound == 6 for r in summary.reports if r.class_id != "minima")

    @pytest.mark.parametrize("group", ["E6", "E7", "E8", "F4"])
    def test_structure_of_exceptional_groups(self, group):
        for c in instantiate(CartanType.parse(group)):
            report = verify_structure(c)
            assert report.passed, (c.class_id, report.mismatches)
