"""Tests for integral homology and three-valued homotopy evidence."""

import pytest

from fibrantkit.models import HomologyGroup


def _circle():
    """Two objects joined by two parallel arrows; its nerve is a circle."""
    from fibrantkit import validate_category

    return validate_category({
        "objects": ["a", "b"],
        "morphisms": [
            {"id": "id_a", "dom": "a", "cod": "a"},
            {"id": "id_b", "dom": "b", "cod": "b"},
            {"id": "u", "dom": "a", "cod": "b"},
            {"id": "v", "dom": "a", "cod": "b"},
        ],
        "identities": {"a": "id_a", "b": "id_b"},
        "composition": [
            ["id_a", "id_a", "id_a"],
            ["id_b", "id_b", "id_b"],
            ["u", "id_a", "u"],
            ["v", "id_a", "v"],
            ["id_b", "u", "u"],
            ["id_b", "v", "v"],
        ],
    }, name="circle")


class TestSmithInvariants:
    """Tests for invariant factors of sparse integer matrices."""

    def test_diagonal(self):
        """Test that diag(2, 3) has invariant factors 1 and 6."""
        from fibrantkit.homotopy import smith_invariants

        assert sorted(smith_invariants([{0: 2}, {1: 3}])) == [1, 6]

    def test_unit_pivots(self):
        """Test that dependent unit columns contribute a single factor."""
        from fibrantkit.homotopy import smith_invariants

        assert smith_invariants([{0: 1, 1: 1}, {0: 1, 1: 1}]) == [1]

    def test_zero_matrix(self):
        """Test that empty columns have no invariant factors."""
        from fibrantkit.homotopy import smith_invariants

        assert smith_invariants([{}, {}]) == []


class TestHomology:
    """Tests for homology of nerves."""

    def test_point(self):
        """Test that the point has homology Z, 0, 0."""
        from fibrantkit import homology, nerve
        from fibrantkit.fincat import terminal_category

        profile = homology(nerve(terminal_category(), 3))

        assert profile.groups == [HomologyGroup(free_rank=1), HomologyGroup(), HomologyGroup()]
        assert profile.is_acyclic

    def test_circle(self):
        """Test that the pushout circle has H1 = Z."""
        from fibrantkit import homology, nerve

        profile = homology(nerve(_circle(), 3))

        assert profile.groups[0] == HomologyGroup(free_rank=1)
        assert profile.groups[1] == HomologyGroup(free_rank=1)
        assert profile.groups[2].is_zero

    def test_bz2(self):
        """Test that B(Z/2) truncated at 3 has H1 = Z/2 and H2 = 0."""
        from fibrantkit import homology, nerve
        from fibrantkit.fincat import cyclic_group_category

        profile = homology(nerve(cyclic_group_category(2), 3))

        assert profile.groups[1] == HomologyGroup(torsion=[2])
        assert profile.groups[2].is_zero
        assert str(profile) == "H0=Z, H1=Z/2, H2=0"

    def test_two_points(self):
        """Test that a discrete category on two objects has two components."""
        from fibrantkit import homology, nerve
        from fibrantkit.fincat import discrete_category

        assert homology(nerve(discrete_category(["a", "b"]), 2)).components == 2


class TestContractibility:
    """Tests for weak contractibility verdicts."""

    def test_terminal_object_certifies(self):
        """Test that a terminal object is a certificate."""
        from fibrantkit import is_weakly_contractible
        from fibrantkit.fincat import arrow_category

        assert is_weakly_contractible(arrow_category()).is_certified

    def test_empty_is_refuted(self):
        """Test that the empty category is not contractible."""
        from fibrantkit import is_weakly_contractible
        from fibrantkit.fincat import empty_category

        verdict = is_weakly_contractible(empty_category())

        assert verdict.is_refuted
        assert verdict.witness == {"pi0": 0}

    def test_circle_is_refuted_by_homology(self):
        """Test that the circle is refuted by its first homology."""
        from fibrantkit import is_weakly_contractible

        verdict = is_weakly_contractible(_circle(), T=3)

        assert verdict.is_refuted
        assert "homology" in verdict.witness

    def test_none_rejected(self):
        """Test that None is rejected."""
        from fibrantkit import is_weakly_contractible

        with pytest.raises(ValueError, match="cannot be None"):
            is_weakly_contractible(None)

    def test_reflective_chain(self):
        """Test certification through reflective removals when no terminal object exists."""
        from fibrantkit import is_weakly_contractible
        from fibrantkit.fincat import poset_category

        # a < c > b < d; removing a is reflective and leaves b initial
        order = {("a", "c"), ("b", "c"), ("b", "d")}
        P = poset_category(["a", "b", "c", "d"], lambda x, y: x == y or (x, y) in order)

        verdict = is_weakly_contractible(P, T=2)

        assert verdict.is_certified
        assert verdict.witness["certificate"][0] == "reflective removal of 'a'"


class TestWeakEquivalenceEvidence:
    """Tests for weak-equivalence and cofinality evidence."""

    @pytest.fixture
    def arrow(self):
        """Create the walking arrow 0 -> 1."""
        from fibrantkit.fincat import arrow_category

        return arrow_category()

    def test_adjoint_certifies(self, arrow):
        """Test that a functor with an adjoint is certified."""
        from fibrantkit import weak_equivalence_evidence
        from fibrantkit.fincat import constant_functor, terminal_category

        verdict = weak_equivalence_evidence(constant_functor(arrow, terminal_category(), "*"))

        assert verdict.is_certified

    def test_components_refute(self):
        """Test that collapsing two components is refuted through pi_0."""
        from fibrantkit import weak_equivalence_evidence
        from fibrantkit.fincat import constant_functor, discrete_category, terminal_category

        F = constant_functor(discrete_category(["a", "b"]), terminal_category(), "*")
        verdict = weak_equivalence_evidence(F, T=2)

        assert verdict.is_refuted
        assert verdict.witness["pi0"] == [2, 1]

    def test_group_to_point_refuted_by_homology(self):
        """Test that B(Z/2) -> 1 is refuted through H1."""
        from fibrantkit import weak_equivalence_evidence
        from fibrantkit.fincat import constant_functor, cyclic_group_category, terminal_category

        F = constant_functor(cyclic_group_category(2), terminal_category(), "*")

        assert weak_equivalence_evidence(F, T=3).is_refuted

    def test_cofinal_inclusion_of_terminal(self, arrow):
        """Test that including the terminal object is homotopy cofinal."""
        from fibrantkit.fincat import object_functor
        from fibrantkit.homotopy import is_homotopy_cofinal

        assert is_homotopy_cofinal(object_functor(arrow, "1")).is_certified

    def test_inclusion_of_initial_not_cofinal(self, arrow):
        """Test that including the initial object is not homotopy cofinal."""
        from fibrantkit.fincat import object_functor
        from fibrantkit.homotopy import is_homotopy_cofinal

        verdict = is_homotopy_cofinal(object_functor(arrow, "0"))

        assert verdict.is_refuted
        assert verdict.witness["first"]["object"] == "1"

    def test_fibre_verdicts(self, arrow):
        """Test that the fibres of a projection with contractible fibres are certified."""
        from fibrantkit.fincat import product_category
        from fibrantkit.homotopy import fibre_verdicts

        _, p1, _ = product_category(arrow, arrow)

        assert fibre_verdicts(p1).is_certified
