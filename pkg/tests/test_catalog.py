"""Tests for the class catalog and its validation."""

import dataclasses
import json

import pytest

from app.models.catalog import ClassKind
from app.models.lie import CartanType
from app.services.catalog import (
    catalog_index, centralizer_component_order, centralizer_root_count, class_weyl_element,
    descriptor_problems, instantiate, list_groups, load_exceptional, lookup,
    normalize_label, parse_group,
)
from app.services.errors import (
    CatalogDataError, InadmissibleTypeError, UnknownGroupError, UnknownLabelError,
)
from app.services.rootsys import build_root_system, length, longest_element, parabolic_longest
from app.services import intlat


ALL_GROUPS = [str(t) for t in list_groups(8)]


class TestGroups:
    def test_list_groups(self):
        names = [str(t) for t in list_groups(4)]
        assert names[:4] == ["A1", "A2", "A3", "A4"]
        assert "D4" in names and "F4" in names and "G2" in names
        assert "D3" not in names and "B1" not in names
        assert "E6" not in names

    def test_parse_group(self):
        assert parse_group("e_7") == CartanType.parse("E7")
        with pytest.raises(UnknownGroupError):
            parse_group("Q3")
        with pytest.raises(InadmissibleTypeError):
            parse_group("D3")


class TestInstantiate:
    @pytest.mark.parametrize("group", ALL_GROUPS)
    def test_every_descriptor_is_consistent(self, group):
        t = CartanType.parse(group)
        R = build_root_system(t)
        classes = instantiate(t)
        assert classes
        for c in classes:
            assert descriptor_problems(c, R) == []
            w = class_weyl_element(c)
            assert w.is_involution()
            assert w == longest_element(R).compose(parabolic_longest(R, c.J))
            assert (length(R, w) + intlat.rank(w.one_minus())) % 2 == 0
            assert c.s_O_hat.is_subgroup_of(c.s_O)

    def test_labels_unique_per_group(self):
        for group in ALL_GROUPS:
            labels = [normalize_label(c.label) for c in instantiate(CartanType.parse(group))]
            assert len(labels) == len(set(labels))

    def test_non_normal_closures(self):
        flagged = [
            c.class_id
            for group in ALL_GROUPS
            for c in instantiate(CartanType.parse(group))
            if not c.normal_closure
        ]
        assert sorted(flagged) == ["B3:Z_2", "B5:Z_3", "B7:Z_4", "G2:A1tilde"]

    def test_catalog_index(self):
        index = catalog_index([CartanType.parse("G2")])
        assert index == {"G2": ["A1", "A1tilde", "exp(pi i w2)", "exp(2pi i/3 w1)"]}


class TestLookup:
    def test_normalized_labels(self):
        c3 = CartanType.parse("C3")
        assert lookup(c3, "x 2").label == "X_2"
        assert lookup(CartanType.parse("G2"), "Ã1").label == "A1tilde"
        assert lookup(CartanType.parse("E6"), "exp(ζ ω1)").label == "exp(zeta w1)"
        assert lookup(CartanType.parse("E7"), "3A1′′").label == "3A1''"

    def test_unknown_label_lists_choices(self):
        with pytest.raises(UnknownLabelError) as info:
            lookup(CartanType.parse("G2"), "B7")
        assert "A1tilde" in str(info.value)

    def test_normalize_label(self):
        assert normalize_label("X_2") == normalize_label("x2")
        assert normalize_label("Ã_1") == "a1tilde"


class TestValidation:
    def test_tampered_descriptor_reports_problems(self):
        c = lookup(CartanType.parse("C3"), "X_2")
        broken = dataclasses.replace(c, J=(1,))
        problems = descriptor_problems(broken)
        assert any("w0*w_J" in p for p in problems)

    def test_non_root_factor(self):
        c = lookup(CartanType.parse("A3"), "X_1")
        broken = dataclasses.replace(c, label="broken", w_factors=((1, 0, 1),))
        assert descriptor_problems(broken) == ["factor (1, 0, 1) is not a root"]

    def test_centralizer_root_count(self):
        assert centralizer_root_count("T1A2A3") == 9
        assert centralizer_root_count("A1E7") == 64
        assert centralizer_root_count("T1A1tilde") == 1

    def test_component_order(self):
        assert centralizer_component_order(lookup(CartanType.parse("E7"), "4A1")) == 2
        assert centralizer_component_order(lookup(CartanType.parse("E8"), "4A1")) == 1

    def test_semisimple_kind(self):
        c = lookup(CartanType.parse("E8"), "exp(pi i w8)")
        assert c.kind is ClassKind.SEMISIMPLE
        assert c.centralizer == "A1E7"

    def test_schema_violation(self, tmp_path):
        bad = {
            "group": "G2",
            "rank": 2,
            "classes": [{
                "label": "A1", "kind": "unipotent", "J": [1],
                "w_factors": [[3, 2, 0]], "s_O": [], "s_O_hat": [],
            }],
        }
        path = tmp_path / "g2.json"
        path.write_text(json.dumps(bad), encoding="utf-8")
        with pytest.raises(CatalogDataError):
            load_exceptional(CartanType.parse("G2"), path)

    def test_unreadable_file(self, tmp_path):
        with pytest.raises(CatalogDataError):
            load_exceptional(CartanType.parse("G2"), tmp_path / "missing.json")

    def test_bad_rational(self, tmp_path):
        bad = {
            "group": "G2",
            "rank": 2,
            "classes": [{
                "label": "A1", "kind": "unipotent", "J": [1],
                "w_factors": [[3, 2]], "s_O": [["1/5", "0"]], "s_O_hat": [],
            }],
        }
        path = tmp_path / "g2.json"
        path.write_text(json.dumps(bad), encoding="utf-8")
        with pytest.raises(CatalogDataError):
            load_exceptional(CartanType.parse("G2"), path)
