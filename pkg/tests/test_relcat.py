"""Tests for relative categories, zigzags and right fractions."""

import pytest


class TestZigzagType:
    """Tests for zigzag types and index categories."""

    def test_directions(self):
        """Test that entries expand to one sign per arrow."""
        from fibrantkit import ZigzagType

        t = ZigzagType.of(-1, 2, -1)

        assert t.directions() == (-1, 1, 1, -1)
        assert t.length == 4
        assert str(t) == "[-1;2;-1]"

    def test_normalize(self):
        """Test that zeros are dropped and same-sign entries merged."""
        from fibrantkit import ZigzagType
        from fibrantkit.relcat import normalize_zigzag_type

        assert normalize_zigzag_type(ZigzagType.of(1, 2, 0, -1, -2)) == ZigzagType.of(3, -3)

    def test_index_category_of_cocycle_type(self):
        """Test the index category of [-1;1]: one leftward, one rightward arrow."""
        from fibrantkit import ZigzagType
        from fibrantkit.relcat import zigzag_index_category

        index = zigzag_index_category(ZigzagType.of(-1, 1))

        assert index.base.objects == (0, 1, 2)
        assert set(index.base.morphisms) == {(0, 0), (1, 1), (2, 2), (1, 0), (1, 2)}
        assert index.is_weq((1, 0))
        assert not index.is_weq((1, 2))

    def test_index_isomorphism(self):
        """Test that an unnormalized type is isomorphic to its normalization."""
        from fibrantkit import ZigzagType
        from fibrantkit.relcat import index_isomorphism

        assert index_isomorphism(ZigzagType.of(1, 0, 2, -1)).is_isomorphism()


class TestRelCategory:
    """Tests for relative category validation."""

    @pytest.fixture
    def chain(self):
        """Create the chain 0 < 1 < 2."""
        from fibrantkit.fincat import poset_category

        return poset_category(["0", "1", "2"], lambda x, y: x <= y, name="chain")

    def test_not_closed_under_composition(self, chain):
        """Test that weak equivalences must compose."""
        from fibrantkit import RelCategory
        from fibrantkit.exceptions import NotARelativeCategory

        with pytest.raises(NotARelativeCategory, match="closed under composition"):
            RelCategory(chain, ["0<=1", "1<=2"])

    def test_two_out_of_three_flag(self, chain):
        """Test that the two-out-of-three flag is enforced."""
        from fibrantkit import RelCategory
        from fibrantkit.exceptions import NotARelativeCategory

        with pytest.raises(NotARelativeCategory, match="two-out-of-three"):
            RelCategory(chain, ["0<=1", "0<=2"], two_out_of_three=True)

    def test_unknown_weak_equivalence(self, chain):
        """Test that unknown morphism ids are reported."""
        from fibrantkit import RelCategory
        from fibrantkit.exceptions import NotARelativeCategory

        with pytest.raises(NotARelativeCategory, match="unknown morphisms"):
            RelCategory(chain, ["2<=0"])

    def test_identities_always_weak(self, chain):
        """Test that identities are added to the weak equivalences."""
        from fibrantkit import RelCategory

        rel = RelCategory.minimal(chain)

        assert rel.weq == frozenset({"0<=0", "1<=1", "2<=2"})
        assert rel.satisfies_two_out_of_three()

    def test_auxiliary(self, chain):
        """Test that the auxiliary relative category makes every W-morphism weak."""
        from fibrantkit import RelCategory

        aux = RelCategory(chain, ["0<=1"]).auxiliary()

        assert set(aux.base.morphisms) == set(aux.weq)
        assert "1<=2" not in aux.base.morphisms

    def test_rel_functor_preserves_weak_equivalences(self):
        """Test that a functor must send weak equivalences to weak equivalences."""
        from fibrantkit import NotAFunctor, RelCategory
        from fibrantkit.fincat import arrow_category, identity_functor
        from fibrantkit.relcat import RelFunctor

        C = arrow_category()

        with pytest.raises(NotAFunctor, match="outside weq"):
            RelFunctor(identity_functor(C), RelCategory.maximal(C), RelCategory.minimal(C)).check()


class TestZigzags:
    """Tests for zigzag enumeration, ladders and zigzag categories."""

    @pytest.fixture
    def maximal_arrow(self):
        """Create the walking arrow with every morphism weak."""
        from fibrantkit import RelCategory
        from fibrantkit.fincat import arrow_category

        return RelCategory.maximal(arrow_category())

    def test_enumerate_cocycles(self, maximal_arrow):
        """Test that the only cocycle 0 <- Z -> 1 is 0 <- 0 -> 1."""
        from fibrantkit import Zigzag
        from fibrantkit.relcat import enumerate_zigzags

        zigzags = enumerate_zigzags(maximal_arrow, (-1, 1), "0", "1")

        assert zigzags == [Zigzag((-1, 1), ("0", "0", "1"), ("id_0", "f"))]

    def test_enumerate_respects_weak_equivalences(self):
        """Test that leftward arrows must be weak equivalences."""
        from fibrantkit import RelCategory
        from fibrantkit.fincat import arrow_category
        from fibrantkit.relcat import enumerate_zigzags

        rel = RelCategory.minimal(arrow_category())

        assert enumerate_zigzags(rel, (-1,), "1", "0") == []

    def test_identity_ladder(self, maximal_arrow):
        """Test that identities form a ladder from a zigzag to itself."""
        from fibrantkit.relcat import enumerate_zigzags, is_ladder

        z = enumerate_zigzags(maximal_arrow, (-1, 1), "0", "1")[0]

        assert is_ladder(maximal_arrow, z, z, ("id_0", "id_0", "id_1"))
        assert not is_ladder(maximal_arrow, z, z, ("id_0", "id_1"))

    def test_zigzag_category_unknown_object(self, maximal_arrow):
        """Test that zigzag categories need objects of the base."""
        from fibrantkit import UnknownObject, ZigzagType
        from fibrantkit.relcat import zigzag_category

        with pytest.raises(UnknownObject):
            zigzag_category(maximal_arrow, ZigzagType.of(-1, 1), "0", "9")

    def test_insert_identity(self, maximal_arrow):
        """Test that an inserted identity points left at the join."""
        from fibrantkit.relcat import enumerate_zigzags, insert_identity

        z = enumerate_zigzags(maximal_arrow, (-1, 1), "0", "1")[0]
        inserted = insert_identity(maximal_arrow.base, z, 2)

        assert inserted.directions == (-1, 1, -1)
        assert inserted.objects == ("0", "0", "1", "1")
        assert inserted.arrows == ("id_0", "f", "id_1")

    def test_insertion_functor_is_functor(self, maximal_arrow):
        """Test that the insertion functor is functorial."""
        from fibrantkit.relcat import insertion_functor

        F = insertion_functor(maximal_arrow, 1, 1, "0", "1")

        assert F.is_functor()

    def test_insertion_functor_negative_lengths(self, maximal_arrow):
        """Test that k and l must be non-negative."""
        from fibrantkit.relcat import insertion_functor

        with pytest.raises(ValueError, match="non-negative"):
            insertion_functor(maximal_arrow, -1, 0, "0", "1")

    def test_induced_functor_needs_weak_equivalences(self):
        """Test that only weak equivalences induce functors of cocycle categories."""
        from fibrantkit import RelCategory
        from fibrantkit.fincat import arrow_category
        from fibrantkit.relcat import induced_functor

        rel = RelCategory.minimal(arrow_category())

        with pytest.raises(ValueError, match="weak equivalences"):
            induced_functor(rel, "f", "id_1")

    def test_total_zigzag_projection(self, maximal_arrow):
        """Test that the endpoint projection of all weak arrows is a functor."""
        from fibrantkit import ZigzagType
        from fibrantkit.relcat import total_zigzag_category

        K, projection = total_zigzag_category(maximal_arrow, ZigzagType.of(-1))

        assert len(K.objects) == 3
        assert projection.is_functor()


class TestRightFractions:
    """Tests for the right-fractions sweep."""

    @pytest.fixture
    def maximal_arrow(self):
        """Create the walking arrow with every morphism weak."""
        from fibrantkit import RelCategory
        from fibrantkit.fincat import arrow_category

        return RelCategory.maximal(arrow_category())

    def test_rows_and_aggregate(self, maximal_arrow):
        """Test one row per instance plus the aggregate, none refuted."""
        from fibrantkit import CheckStatus
        from fibrantkit.relcat import check_right_fractions

        report = check_right_fractions(maximal_arrow, kmax=1, lmax=1, dim=2, auxiliary=False)
        ids = [row.id for row in report.checks]

        assert len(ids) == 2 * 2 * 2 * 2 + 1
        assert "right-fractions" in ids
        assert "right-fractions/k0/l0/000-001" in ids
        assert ids == sorted(ids)
        assert all(row.status is not CheckStatus.REFUTED for row in report.checks)

    def test_auxiliary_rows(self, maximal_arrow):
        """Test that the auxiliary sweep adds its own rows."""
        from fibrantkit.relcat import check_right_fractions

        report = check_right_fractions(maximal_arrow, kmax=0, lmax=0, dim=2, auxiliary=True)

        assert any(row.id.startswith("right-fractions-aux/") for row in report.checks)

    def test_cap_becomes_error_row(self, maximal_arrow):
        """Test that a tiny cap yields error rows instead of aborting."""
        from fibrantkit import CheckStatus
        from fibrantkit.relcat import check_right_fractions

        report = check_right_fractions(maximal_arrow, kmax=0, lmax=0, dim=2, auxiliary=False, cap=1)

        statuses = {row.id: row.status for row in report.checks}
        assert CheckStatus.ERROR in statuses.values()
        assert "right-fractions" in statuses
