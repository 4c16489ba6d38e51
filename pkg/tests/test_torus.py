"""Tests for torus points, centers and fixed subtori."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from app.models.lie import CartanType, Weight
from app.models.torus import FiniteTorusSubgroup, TorusPoint, format_rational
from app.services.errors import NotInvolutionError, RootError
from app.services.rootsys import build_root_system, longest_element, reflection_for_root, simple_reflection
from app.services.torus import (
    center, center_from_cartan, center_order, centralizer_roots, component_group_of_Tw,
    eval_phase, exp_coweight, fixed_torus_rank, fundamental_coweight, h_minus_one,
    h_minus_one_each, root_phase, trivial_on,
)


def rs(name: str):
    return build_root_system(CartanType.parse(name))


class TestTorusPoint:
    def test_coordinates_reduced_mod_one(self):
        assert TorusPoint.from_values(["3/2", -1, "5/4"]).q == (Fraction(1, 2), Fraction(0), Fraction(1, 4))

    def test_group_law(self):
        a = TorusPoint.from_values(["1/4", "1/2"])
        assert (a + a + a + a).is_identity()
        assert a.order == 4
        assert (a + (-a)).is_identity()
        assert a.power(2) == TorusPoint.from_values(["1/2", "0"])

    def test_phase(self):
        point = h_minus_one(3, 1, 3)
        assert eval_phase(Weight((1, 0, 0)), point) == Fraction(1, 2)
        assert eval_phase(Weight((1, 5, 1)), point) == 0

    def test_format(self):
        assert format_rational(Fraction(3, 4)) == "3/4"
        assert TorusPoint.from_values(["1/2", "0"]).to_list() == ["1/2", "0"]

    @given(st.lists(st.fractions(max_denominator=12), min_size=1, max_size=6))
    def test_order_kills_point(self, values):
        point = TorusPoint(tuple(values))
        assert point.power(point.order).is_identity()


class TestSubgroups:
    def test_elements_and_order(self):
        S = h_minus_one_each(4, [1, 2, 3])
        assert S.order() == 8
        assert S.contains(h_minus_one(4, 1, 3))
        assert not S.contains(h_minus_one(4, 4))

    def test_subgroup_relations(self):
        big = h_minus_one_each(3, [1, 2])
        small = FiniteTorusSubgroup(3, (h_minus_one(3, 1, 2),))
        assert small.is_subgroup_of(big)
        assert not big.is_subgroup_of(small)
        assert big.joined_with(small).same_as(big)
        assert FiniteTorusSubgroup.trivial(3).order() == 1

    def test_trivial_on(self):
        S = h_minus_one_each(2, [1])
        assert trivial_on(Weight((2, 1)), S)
        assert not trivial_on(Weight((1, 0)), S)
        assert trivial_on(Weight((1, 0)), FiniteTorusSubgroup.trivial(2))


class TestCenters:
    @pytest.mark.parametrize("name,order", [
        ("A1", 2), ("A4", 5), ("A7", 8), ("B3", 2), ("B6", 2), ("C4", 2), ("D4", 4),
        ("D5", 4), ("D6", 4), ("E6", 3), ("E7", 2), ("E8", 1), ("F4", 1), ("G2", 1),
    ])
    def test_center_order(self, name, order):
        assert center_order(CartanType.parse(name)) == order

    @pytest.mark.parametrize("name", ["A3", "B4", "C5", "D4", "D5", "D7", "E6", "E7"])
    def test_center_is_integral_on_roots(self, name):
        R = rs(name)
        for g in center(R.cartan_type).generators:
            assert all(root_phase(R, beta, g) == 0 for beta in R.positive_roots)

    @pytest.mark.parametrize("name", ["B5", "C3", "D4", "D5", "D8", "E7"])
    def test_printed_center_matches_cartan_center(self, name):
        R = rs(name)
        assert center(R.cartan_type).same_as(center_from_cartan(R))

    def test_fundamental_coweight(self):
        assert fundamental_coweight(rs("A1"), 1) == (Fraction(1, 2),)
        assert fundamental_coweight(rs("A2"), 1) == (Fraction(2, 3), Fraction(1, 3))
        with pytest.raises(RootError):
            fundamental_coweight(rs("A2"), 3)

    def test_e7_center_generator_from_coweight(self):
        R = rs("E7")
        assert exp_coweight(R, 2, Fraction(1)) == h_minus_one(7, 2, 5, 7)


class TestFixedTorus:
    def test_reflection_in_a1(self):
        R = rs("A1")
        w = simple_reflection(R, 1)
        assert component_group_of_Tw(w) == [2]
        assert fixed_torus_rank(w) == 0

    def test_minus_one_has_finite_fixed_points(self):
        R = rs("E8")
        w0 = longest_element(R)
        assert fixed_torus_rank(w0) == 0
        assert component_group_of_Tw(w0) == [2] * 8

    def test_requires_involution(self):
        R = rs("A2")
        with pytest.raises(NotInvolutionError):
            fixed_torus_rank(simple_reflection(R, 1).compose(simple_reflection(R, 2)))

    def test_short_reflection_in_c_is_connected(self):
        R = rs("C5")
        assert component_group_of_Tw(reflection_for_root(R, (1, 0, 0, 0, 0))) == []


class TestCentralizerRoots:
    def test_e8_involution(self):
        assert len(centralizer_roots(rs("E8"), 8, Fraction(1, 2))) == 1 + 63

    def test_levi_family(self):
        # T1 A2 A4 inside A7 for the one-parameter family through ω̌_3
        assert len(centralizer_roots(rs("A7"), 3, None)) == 3 + 10

    def test_g2_order_three(self):
        assert len(centralizer_roots(rs("G2"), 1, Fraction(1, 3))) == 3
