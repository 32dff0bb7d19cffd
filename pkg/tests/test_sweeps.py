"""Tests for the property sweeps and comparison rows."""

import pytest

from fibrantkit.models import CheckStatus


@pytest.fixture
def small_pool():
    """Create a pool of the point and the walking arrow."""
    from fibrantkit.fincat import arrow_category, terminal_category

    return [terminal_category("1"), arrow_category("[1]")]


class TestPool:
    """Tests for sweep pools."""

    def test_base_included_when_small(self):
        """Test that a small base leads the pool."""
        from fibrantkit.fincat import arrow_category
        from fibrantkit.sweeps import sweep_pool

        base = arrow_category("base")

        assert sweep_pool(base, 2)[0] is base
        assert len(sweep_pool(base, 2)) == 5

    def test_base_excluded_when_large(self):
        """Test that a base over the object bound is left out."""
        from fibrantkit.fincat import arrow_category
        from fibrantkit.sweeps import sweep_pool

        assert [C.name for C in sweep_pool(arrow_category("base"), 1)] == ["1", "[1]", "I", "2"]

    def test_functor_limit(self, small_pool):
        """Test that at most limit functors are taken per ordered pair."""
        from fibrantkit.sweeps import pool_functors

        assert len(pool_functors(small_pool, limit=1)) == 4
        # [1] -> [1] has three functors
        assert len(pool_functors(small_pool)) == 1 + 2 + 1 + 3


class TestSweeps:
    """Tests for the four property sweeps."""

    @pytest.fixture
    def functors(self, small_pool):
        """Create every functor between the pool categories."""
        from fibrantkit.sweeps import pool_functors

        return pool_functors(small_pool)

    @pytest.fixture
    def cofinal(self):
        """Create a cofinality cache at truncation 2."""
        from fibrantkit.sweeps import CofinalityCache

        return CofinalityCache(T=2)

    def test_fibration_cofinality(self, functors, cofinal):
        """Test that fibre contractibility never contradicts cofinality."""
        from fibrantkit.sweeps import sweep_fibration_cofinality

        row = sweep_fibration_cofinality(functors, cofinal)

        assert row.id == "sweep/fibration-cofinality"
        assert row.status is CheckStatus.PASS
        assert row.witness["instances"] > 0

    def test_cofinal_fully_faithful(self, functors, cofinal):
        """Test cancellation of cofinality along fully faithful functors."""
        from fibrantkit.sweeps import sweep_cofinal_fully_faithful

        row = sweep_cofinal_fully_faithful(functors, cofinal)

        assert row.status is CheckStatus.PASS
        assert row.witness["instances"] > 0

    def test_quillen_a(self, functors, cofinal):
        """Test that certified cofinal functors are never refuted as weak equivalences."""
        from fibrantkit.sweeps import sweep_quillen_a

        row = sweep_quillen_a(functors, cofinal)

        assert row.status is CheckStatus.PASS
        assert row.witness["instances"] > 0

    def test_adjoint_pullback(self, functors):
        """Test that left adjoints pull back along fibrations."""
        from fibrantkit.sweeps import sweep_adjoint_pullback

        row = sweep_adjoint_pullback(functors)

        assert row.status is CheckStatus.PASS
        assert row.witness["instances"] > 0

    def test_cache_reuses_verdicts(self, functors, cofinal):
        """Test that the cache returns the same verdict object twice."""
        F = functors[0]

        assert cofinal(F) is cofinal(F)


class TestComparisonRows:
    """Tests for Thomason and category-of-elements rows."""

    def test_thomason_rows(self, small_pool):
        """Test one row per derived diagram, none refuted."""
        from fibrantkit.sweeps import thomason_rows

        rows = thomason_rows(small_pool, T=2)

        # representables, the coslice diagram and constant [1] per category
        assert len(rows) == (1 + 2) + (2 + 2)
        assert all(row.id.startswith("thomason/") for row in rows)
        assert not any(row.status is CheckStatus.REFUTED for row in rows)

    def test_elements_rows(self, small_pool):
        """Test that every representable passes the elements comparison."""
        from fibrantkit.sweeps import elements_rows

        rows = elements_rows(small_pool, T=2)

        assert [row.id for row in rows] == ["elements-iso/1/*", "elements-iso/[1]/0", "elements-iso/[1]/1"]
        assert all(row.status is CheckStatus.PASS for row in rows)

    def test_cap_yields_error_rows(self, small_pool):
        """Test that a tiny cap turns comparisons into error rows."""
        from fibrantkit.sweeps import elements_rows

        rows = elements_rows(small_pool, T=2, cap=1)

        assert any(row.status is CheckStatus.ERROR for row in rows)
