"""Tests for root systems, reflections and longest elements."""

import pytest
from hypothesis import given, strategies as st

from app.models.lie import CartanType, WeylElement
from app.services.errors import InadmissibleTypeError, NotInvolutionError, RootError
from app.services.rootsys import (
    apply_to_root, build_root_system, cartan_matrix, e_to_alpha, is_admissible, length,
    longest_element, minus_fixed_roots, parabolic_longest, positive_root_count,
    product_of_reflections, reflection_for_root, simple_reflection, symmetrizers, theta,
)


def t(text: str) -> CartanType:
    return CartanType.parse(text)


GROUPS = ["A1", "A4", "B2", "B5", "C3", "C4", "D4", "D5", "E6", "E7", "E8", "F4", "G2"]


class TestCartanData:
    @pytest.mark.parametrize("name,count", [
        ("A1", 1), ("A5", 15), ("B3", 9), ("C4", 16), ("D4", 12), ("D6", 30),
        ("E6", 36), ("E7", 63), ("E8", 120), ("F4", 24), ("G2", 6),
    ])
    def test_positive_root_count(self, name, count):
        R = build_root_system(t(name))
        assert len(R.positive_roots) == count
        assert positive_root_count(R.cartan_type.letter, R.rank) == count

    def test_non_simply_laced_entries(self):
        assert cartan_matrix(t("B3"))[1][2] == -2
        assert cartan_matrix(t("C3"))[2][1] == -2
        assert cartan_matrix(t("F4"))[1][2] == -2
        assert cartan_matrix(t("G2"))[1][0] == -3

    def test_symmetrizers(self):
        assert symmetrizers(t("B4")) == (2, 2, 2, 1)
        assert symmetrizers(t("C4")) == (1, 1, 1, 2)
        assert symmetrizers(t("F4")) == (2, 2, 1, 1)
        assert symmetrizers(t("G2")) == (1, 3)

    @pytest.mark.parametrize("name", GROUPS)
    def test_symmetrized_cartan_is_symmetric(self, name):
        A = cartan_matrix(t(name))
        d = symmetrizers(t(name))
        n = len(A)
        assert all(A[i][j] * d[j] == A[j][i] * d[i] for i in range(n) for j in range(n))

    @pytest.mark.parametrize("name", ["A0", "B1", "C1", "D3", "E5", "E9", "F3", "G3"])
    def test_inadmissible_types(self, name):
        assert not is_admissible(CartanType.parse(name))
        with pytest.raises(InadmissibleTypeError):
            build_root_system(CartanType.parse(name))

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            CartanType.parse("X7")

    def test_highest_root(self):
        assert build_root_system(t("E8")).highest_root == (2, 3, 4, 6, 5, 4, 3, 2)
        assert build_root_system(t("G2")).highest_root == (3, 2)


class TestLongestElement:
    @pytest.mark.parametrize("name", GROUPS)
    def test_length_of_longest_element(self, name):
        R = build_root_system(t(name))
        assert length(R, longest_element(R)) == len(R.positive_roots)

    @pytest.mark.parametrize("name", ["B4", "C3", "D4", "E7", "E8", "F4", "G2"])
    def test_longest_is_minus_one(self, name):
        R = build_root_system(t(name))
        n = R.rank
        assert longest_element(R).matrix == tuple(
            tuple(-1 if i == j else 0 for j in range(n)) for i in range(n)
        )
        assert theta(R) == tuple(range(1, n + 1))

    def test_theta_nontrivial(self):
        assert theta(build_root_system(t("A5"))) == (5, 4, 3, 2, 1)
        assert theta(build_root_system(t("D5"))) == (1, 2, 3, 5, 4)
        assert theta(build_root_system(t("E6"))) == (6, 2, 5, 4, 3, 1)

    def test_parabolic_longest_of_empty_set(self):
        R = build_root_system(t("E6"))
        assert parabolic_longest(R, []).is_identity()

    def test_minus_fixed_roots_of_minus_one(self):
        R = build_root_system(t("E8"))
        assert len(minus_fixed_roots(R, longest_element(R))) == 240

    def test_minus_fixed_roots_requires_involution(self):
        R = build_root_system(t("A2"))
        rotation = simple_reflection(R, 1).compose(simple_reflection(R, 2))
        with pytest.raises(NotInvolutionError):
            minus_fixed_roots(R, rotation)


class TestReflections:
    def test_reflection_negates_its_root(self):
        R = build_root_system(t("F4"))
        for beta in R.positive_roots:
            s = reflection_for_root(R, beta)
            assert s.is_involution()
            assert apply_to_root(R, s, beta) == tuple(-c for c in beta)

    def test_reflection_of_non_root(self):
        R = build_root_system(t("A3"))
        with pytest.raises(RootError):
            reflection_for_root(R, (1, 0, 1))

    def test_simple_reflection_index_checked(self):
        with pytest.raises(RootError):
            simple_reflection(build_root_system(t("A3")), 4)

    def test_product_of_reflections_is_ordered(self):
        R = build_root_system(t("A2"))
        s1, s2 = simple_reflection(R, 1), simple_reflection(R, 2)
        assert product_of_reflections(R, [(1, 0), (0, 1)]) == s1.compose(s2)
        assert product_of_reflections(R, []) == WeylElement.identity(2)

    def test_order_of_coxeter_element(self):
        R = build_root_system(t("G2"))
        assert simple_reflection(R, 1).compose(simple_reflection(R, 2)).order() == 6

    @given(
        name=st.sampled_from(GROUPS),
        word=st.lists(st.integers(min_value=1, max_value=8), max_size=12),
    )
    def test_length_is_inverse_invariant(self, name, word):
        R = build_root_system(t(name))
        w = WeylElement.identity(R.rank)
        for i in word:
            if i <= R.rank:
                w = w.compose(simple_reflection(R, i))
        assert length(R, w) == length(R, w.inverse())
        assert w.compose(w.inverse()).is_identity()
        for beta in R.positive_roots[:10]:
            assert R.is_root(apply_to_root(R, w, beta))


class TestEToAlpha:
    def test_type_a(self):
        assert e_to_alpha(t("A2"), (1, 0, -1)) == (1, 1)

    def test_type_c_long_root(self):
        assert e_to_alpha(t("C3"), (2, 0, 0)) == (2, 2, 1)

    def test_type_b(self):
        assert e_to_alpha(t("B3"), (0, 0, 1)) == (0, 0, 1)
        assert e_to_alpha(t("B3"), (1, 1, 0)) == (1, 2, 2)

    def test_type_d_highest_root(self):
        assert e_to_alpha(t("D4"), (1, 1, 0, 0)) == (1, 2, 1, 1)

    def test_rejects_wrong_length_and_non_lattice(self):
        with pytest.raises(RootError):
            e_to_alpha(t("A2"), (1, -1))
        with pytest.raises(RootError):
            e_to_alpha(t("D4"), (1, 0, 0, 0))
        with pytest.raises(RootError):
            e_to_alpha(t("E6"), (1, 0, 0, 0, 0, 0))
