"""Tests for truncated nerves, homotopy colimits and the Thomason comparison."""

import pytest


class TestNerve:
    """Tests for nerves of finite categories."""

    @pytest.fixture
    def arrow(self):
        """Create the walking arrow 0 -> 1."""
        from fibrantkit.fincat import arrow_category

        return arrow_category()

    def test_level_sizes(self, arrow):
        """Test that level n of N([1]) has n + 2 simplices."""
        from fibrantkit import nerve

        S = nerve(arrow, 3)

        assert [len(level) for level in S.levels] == [2, 3, 4, 5]
        assert [len(S.nondegenerate(n)) for n in range(4)] == [2, 1, 0, 0]

    def test_simplicial_identities(self, arrow):
        """Test that the nerve satisfies every simplicial identity."""
        from fibrantkit import nerve

        assert nerve(arrow, 3).violations() == []

    def test_vertices_of_edge(self, arrow):
        """Test that the vertices of the edge f are its domain and codomain."""
        from fibrantkit import nerve

        S = nerve(arrow, 2)

        assert S.vertices(1, ("f",)) == ["0", "1"]

    def test_simplex_cap(self, arrow):
        """Test that a level over the simplex cap is refused."""
        from fibrantkit import SizeCapExceeded, nerve

        with pytest.raises(SizeCapExceeded):
            nerve(arrow, 3, cap=3)

    def test_negative_dimension(self):
        """Test that the truncation dimension must be non-negative."""
        from fibrantkit import SimplicialSet

        with pytest.raises(ValueError, match="non-negative"):
            SimplicialSet(-1, [], [], [])

    def test_nerve_map_of_identity(self, arrow):
        """Test that the nerve of the identity functor is an isomorphism."""
        from fibrantkit.fincat import identity_functor
        from fibrantkit.simplicial import nerve_map

        f = nerve_map(identity_functor(arrow), 2)

        assert f.violations() == []
        assert f.is_isomorphism()


class TestHomotopyColimit:
    """Tests for the homotopy colimit and its comparisons."""

    @pytest.fixture
    def arrow(self):
        """Create the walking arrow 0 -> 1."""
        from fibrantkit.fincat import arrow_category

        return arrow_category()

    def test_hocolim_is_simplicial(self, arrow):
        """Test that the homotopy colimit satisfies the simplicial identities."""
        from fibrantkit.fincat import coslice_diagram
        from fibrantkit.simplicial import homotopy_colimit, nerve_diagram

        S = homotopy_colimit(nerve_diagram(coslice_diagram(arrow), 2), 2)

        assert S.violations() == []

    def test_hocolim_needs_high_enough_values(self, arrow):
        """Test that values truncated below T are rejected."""
        from fibrantkit.fincat import constant_diagram
        from fibrantkit.simplicial import homotopy_colimit, nerve_diagram

        with pytest.raises(ValueError, match="truncated"):
            homotopy_colimit(nerve_diagram(constant_diagram(arrow, arrow), 1), 2)

    def test_elements_isomorphism(self, arrow):
        """Test the explicit isomorphism to the nerve of the category of elements."""
        from fibrantkit.fincat import representable_diagram
        from fibrantkit.simplicial import elements_isomorphism

        iso = elements_isomorphism(representable_diagram(arrow, "1"), 2)

        assert iso.violations() == []
        assert iso.is_isomorphism()

    def test_thomason_comparison_is_simplicial(self, arrow):
        """Test that the Thomason comparison commutes with faces and degeneracies."""
        from fibrantkit.fincat import constant_diagram
        from fibrantkit.simplicial import thomason_comparison

        comparison = thomason_comparison(constant_diagram(arrow, arrow), 2)

        assert comparison.violations() == []

    def test_thomason_is_weak_equivalence(self, arrow):
        """Test that the Thomason comparison is never refuted on the coslice diagram."""
        from fibrantkit import weak_equivalence_evidence
        from fibrantkit.fincat import coslice_diagram
        from fibrantkit.simplicial import thomason_comparison

        verdict = weak_equivalence_evidence(thomason_comparison(coslice_diagram(arrow), 2), T=2)

        assert not verdict.is_refuted
