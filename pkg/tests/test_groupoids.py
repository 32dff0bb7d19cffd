"""Tests for finite groupoids and the bounded-groupoid family."""

import pytest


@pytest.fixture
def bz2():
    """Create B(Z/2)."""
    from fibrantkit.fincat import cyclic_group_category

    return cyclic_group_category(2, name="BZ2")


class TestFunctorGroupoids:
    """Tests for functor and path groupoids."""

    def test_interval(self):
        """Test that the interval is a groupoid with four morphisms."""
        from fibrantkit.groupoids import interval_groupoid

        I = interval_groupoid()

        assert I.is_groupoid()
        assert len(I.objects) == 2 and len(I.morphisms) == 4

    def test_endofunctors_of_bz2(self, bz2):
        """Test that Fun(BZ2, BZ2) has two components with two automorphisms each."""
        from fibrantkit.groupoids import functor_groupoid

        G = functor_groupoid(bz2, bz2)

        assert len(G.objects) == 2
        assert len(G.morphisms) == 4
        assert len(G.components()) == 2

    def test_path_groupoid(self, bz2):
        """Test Path(BZ2) with its constant-path section and endpoint maps."""
        from fibrantkit.fincat import compose_functors, identity_functor
        from fibrantkit.groupoids import is_equivalence, path_groupoid

        path = path_groupoid(bz2)

        assert len(path.groupoid.objects) == 2
        assert len(path.groupoid.morphisms) == 8
        assert path.i.is_functor() and path.p0.is_functor() and path.p1.is_functor()
        assert compose_functors(path.p0, path.i) == identity_functor(bz2)
        assert compose_functors(path.p1, path.i) == identity_functor(bz2)
        assert is_equivalence(path.p0)

    def test_path_needs_groupoid(self):
        """Test that path groupoids are only built for groupoids."""
        from fibrantkit.fincat import arrow_category
        from fibrantkit.groupoids import path_groupoid

        with pytest.raises(ValueError, match="not a groupoid"):
            path_groupoid(arrow_category())


class TestEquivalencesAndIsofibrations:
    """Tests for equivalences and isofibrations of groupoids."""

    def test_point_into_interval(self):
        """Test that including an endpoint of I is an equivalence but not an isofibration."""
        from fibrantkit.fincat import object_functor
        from fibrantkit.groupoids import interval_groupoid, is_equivalence, is_isofibration

        F = object_functor(interval_groupoid(), "0")

        assert is_equivalence(F)
        assert not is_isofibration(F)

    def test_collapse_is_isofibration(self, bz2):
        """Test that BZ2 -> pt is an isofibration but not an equivalence."""
        from fibrantkit.fincat import constant_functor, terminal_category
        from fibrantkit.groupoids import is_equivalence, is_isofibration

        F = constant_functor(bz2, terminal_category("pt"), "*")

        assert is_isofibration(F)
        assert not is_equivalence(F)

    def test_strict_pullback_counts(self, bz2):
        """Test the size of the pullback of the identity along itself."""
        from fibrantkit.fincat import identity_functor
        from fibrantkit.groupoids import groupoid_pullback

        F = identity_functor(bz2)

        assert groupoid_pullback(F, F) == (1, 2)


class TestBoundedFamily:
    """Tests for the bounded-groupoid family."""

    @pytest.fixture
    def family(self):
        """Create the family within two objects and sixteen morphisms."""
        from fibrantkit.groupoids import bounded_groupoid_family

        return bounded_groupoid_family(2, 16)

    def test_members(self, family):
        """Test that the closure adds BZ2xBZ2 and Path(BZ2) and nothing else."""
        assert list(family.members) == ["pt", "BZ2", "BZ2xBZ2", "Path(BZ2)"]

    def test_tabled_limits(self, family):
        """Test that products and paths are recorded up to isomorphism."""
        assert family.products[("pt", "BZ2")][0] == "BZ2"
        assert family.products[("BZ2", "BZ2")][0] == "BZ2xBZ2"
        assert family.paths["pt"][0] == "pt"
        assert family.paths["BZ2"][0] == "Path(BZ2)"

    def test_closure_error(self):
        """Test that bounds too small for BZ2xBZ2 are refused."""
        from fibrantkit.exceptions import ClosureError
        from fibrantkit.groupoids import bounded_groupoid_family

        with pytest.raises(ClosureError, match="BZ2xBZ2"):
            bounded_groupoid_family(2, 3)

    def test_family_category(self, family):
        """Test the category of all functors between members."""
        from fibrantkit.groupoids import family_category

        fc = family_category(family)

        assert fc.category.identity("pt") == "id_pt"
        assert fc.category.hom("pt", "BZ2") == ["pt->BZ2:0"]
        assert "id_BZ2" in fc.weq
        assert any(m.startswith("Path(BZ2)->BZ2:") for m in fc.weq)
        assert "BZ2->pt:0" in fc.fib
        assert "BZ2->pt:0" not in fc.weq
