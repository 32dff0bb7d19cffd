"""Tests for finite categories, functors, comma categories and fibrations."""

import pytest


def _magma_raw(table):
    """One-object category description with morphisms e, a, b and the given products."""
    return {
        "objects": ["*"],
        "morphisms": [{"id": m, "dom": "*", "cod": "*"} for m in ("e", "a", "b")],
        "identities": {"*": "e"},
        "composition": [[g, f, gf] for (g, f), gf in table.items()],
    }


class TestValidateCategory:
    """Tests for validating category descriptions."""

    @pytest.fixture
    def arrow_raw(self):
        """Create the raw description of the walking arrow."""
        from fibrantkit.fincat import arrow_category

        return arrow_category().to_raw()

    def test_valid_description(self, arrow_raw):
        """Test that a complete description validates."""
        from fibrantkit import validate_category

        C = validate_category(arrow_raw, name="arrow")

        assert C.objects == ("0", "1")
        assert len(C.morphisms) == 3
        assert C.compose("f", "id_0") == "f"

    def test_none_description(self):
        """Test that None is rejected."""
        from fibrantkit import validate_category

        with pytest.raises(ValueError, match="cannot be None"):
            validate_category(None)

    def test_missing_composite(self, arrow_raw):
        """Test that an omitted composition pair is an error, not implicit."""
        from fibrantkit.exceptions import DanglingComposite
        from fibrantkit import validate_category

        arrow_raw["composition"] = [t for t in arrow_raw["composition"] if t[:2] != ["f", "id_0"]]

        with pytest.raises(DanglingComposite, match="is missing"):
            validate_category(arrow_raw)

    def test_unknown_object(self, arrow_raw):
        """Test that a morphism into an undeclared object is reported."""
        from fibrantkit import UnknownId, validate_category

        arrow_raw["morphisms"].append({"id": "g", "dom": "0", "cod": "2"})

        with pytest.raises(UnknownId, match="unknown object"):
            validate_category(arrow_raw)

    def test_missing_key(self, arrow_raw):
        """Test that a description without a composition table is rejected."""
        from fibrantkit import ValidationError, validate_category

        del arrow_raw["composition"]

        with pytest.raises(ValidationError, match="missing key"):
            validate_category(arrow_raw)

    def test_non_associative(self):
        """Test that a non-associative table is rejected with every violation listed."""
        from fibrantkit.exceptions import NonAssociative
        from fibrantkit import validate_category

        table = {("e", x): x for x in ("e", "a", "b")}
        table.update({(x, "e"): x for x in ("a", "b")})
        table.update({("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "a"})

        with pytest.raises(NonAssociative) as info:
            validate_category(_magma_raw(table))

        assert info.value.violations

    def test_group_table_validates(self):
        """Test that the multiplication table of Z/3 is a valid one-object category."""
        from fibrantkit import validate_category

        add = {"e": 0, "a": 1, "b": 2}
        name = {0: "e", 1: "a", 2: "b"}
        table = {(g, f): name[(add[g] + add[f]) % 3] for g in add for f in add}

        C = validate_category(_magma_raw(table))

        assert C.is_groupoid()
        assert C.inverse("a") == "b"


class TestFinCategory:
    """Tests for FinCategory structure and derived categories."""

    @pytest.fixture
    def arrow(self):
        """Create the walking arrow 0 -> 1."""
        from fibrantkit.fincat import arrow_category

        return arrow_category()

    def test_terminal_and_initial(self, arrow):
        """Test terminal and initial object detection."""
        assert arrow.terminal_objects() == ["1"]
        assert arrow.initial_objects() == ["0"]

    def test_opposite_swaps_ends(self, arrow):
        """Test that the opposite category reverses every morphism."""
        op = arrow.opposite()

        assert op.ends("f") == ("1", "0")
        assert op.terminal_objects() == ["0"]

    def test_full_subcategory(self, arrow):
        """Test full subcategory on one object."""
        sub = arrow.full_subcategory(["1"])

        assert sub.objects == ("1",)
        assert sub.morphisms == ("id_1",)

    def test_components(self):
        """Test that a discrete category has one component per object."""
        from fibrantkit.fincat import discrete_category

        assert len(discrete_category(["a", "b"]).components()) == 2

    def test_product_category(self, arrow):
        """Test that [1] x [1] has 4 objects and 9 morphisms."""
        from fibrantkit.fincat import product_category

        P, p1, p2 = product_category(arrow, arrow)

        assert len(P.objects) == 4
        assert len(P.morphisms) == 9
        assert p1.is_functor() and p2.is_functor()

    def test_cap_refuses_large_construction(self, arrow):
        """Test that a construction over the cap raises SizeCapExceeded."""
        from fibrantkit import SizeCapExceeded
        from fibrantkit.fincat import product_category

        with pytest.raises(SizeCapExceeded):
            product_category(arrow, arrow, cap=3)

    def test_relabel_is_isomorphic(self, arrow):
        """Test that relabeling yields an isomorphic category."""
        from fibrantkit.fincat import find_isomorphism

        renamed = arrow.relabel({"0": "x", "1": "y"}, {"id_0": "1x", "id_1": "1y", "f": "u"})

        assert renamed.ends("u") == ("x", "y")
        assert find_isomorphism(arrow, renamed) is not None


class TestFunctors:
    """Tests for functors and functor enumeration."""

    @pytest.fixture
    def arrow(self):
        """Create the walking arrow 0 -> 1."""
        from fibrantkit.fincat import arrow_category

        return arrow_category()

    @pytest.fixture
    def bz2(self):
        """Create the one-object groupoid B(Z/2)."""
        from fibrantkit.fincat import cyclic_group_category

        return cyclic_group_category(2)

    def test_enumerate_arrow_endofunctors(self, arrow):
        """Test that [1] has exactly three endofunctors."""
        from fibrantkit.fincat import enumerate_functors

        assert len(list(enumerate_functors(arrow, arrow))) == 3

    def test_enumerate_group_endomorphisms(self, bz2):
        """Test that B(Z/2) has exactly two endofunctors."""
        from fibrantkit.fincat import enumerate_functors

        functors = list(enumerate_functors(bz2, bz2))

        assert len(functors) == 2
        assert all(F.is_functor() for F in functors)

    def test_check_rejects_bad_map(self, arrow):
        """Test that a map reversing the arrow is not a functor."""
        from fibrantkit import Functor, NotAFunctor

        F = Functor(arrow, arrow, {"0": "1", "1": "0"}, {"id_0": "id_1", "id_1": "id_0", "f": "f"})

        with pytest.raises(NotAFunctor, match="wrong dom/cod"):
            F.check()

    def test_isomorphism_to_opposite(self, arrow):
        """Test that [1] is isomorphic to its opposite."""
        from fibrantkit.fincat import find_isomorphism

        F = find_isomorphism(arrow, arrow.opposite())

        assert F is not None
        assert F.is_isomorphism()
        assert F.obj("0") == "1"

    def test_fully_faithful(self, arrow):
        """Test fully faithful detection."""
        from fibrantkit.fincat import constant_functor, object_functor, terminal_category

        assert object_functor(arrow, "0").is_fully_faithful()
        assert not constant_functor(arrow, terminal_category(), "*").is_fully_faithful()


class TestCommaAndFibrations:
    """Tests for comma categories, Grothendieck fibrations and adjoints."""

    @pytest.fixture
    def arrow(self):
        """Create the walking arrow 0 -> 1."""
        from fibrantkit.fincat import arrow_category

        return arrow_category()

    def test_coslice_sizes(self, arrow):
        """Test the sizes of the coslices of [1]."""
        from fibrantkit.fincat import comma_category, identity_functor

        K0, _ = comma_category(identity_functor(arrow), "0")
        K1, _ = comma_category(identity_functor(arrow), "1")

        assert len(K0.objects) == 2
        assert len(K1.objects) == 1

    def test_comma_unknown_object(self, arrow):
        """Test that a comma category over a missing object is refused."""
        from fibrantkit import UnknownObject
        from fibrantkit.fincat import comma_category, identity_functor

        with pytest.raises(UnknownObject):
            comma_category(identity_functor(arrow), "2")

    def test_coslice_identities(self, arrow):
        """Test that coslice objects get the identity of their underlying object."""
        from fibrantkit.fincat import comma_category, identity_functor

        K, projection = comma_category(identity_functor(arrow), "0")

        assert K.identity(("1", "f")) == (("1", "f"), "id_1", ("1", "f"))
        for m in K.morphisms:
            x, y = K.ends(m)
            assert K.compose(m, K.identity(x)) == m
            assert K.compose(K.identity(y), m) == m
        assert projection.is_functor()

    def test_slice_identities(self, arrow):
        """Test that slice objects get the identity of their underlying object."""
        from fibrantkit.fincat import identity_functor, over_category

        K, projection = over_category(identity_functor(arrow), "1")

        assert len(K.objects) == 2
        assert K.identity(("0", "f")) == (("0", "f"), "id_0", ("0", "f"))
        assert K.terminal_objects() == [("1", "id_1")]
        assert projection.is_functor()

    def test_functor_to_point_is_fibration(self, arrow):
        """Test that every functor to the terminal category is a fibration."""
        from fibrantkit.fincat import constant_functor, is_grothendieck_fibration, terminal_category

        assert is_grothendieck_fibration(constant_functor(arrow, terminal_category(), "*"))

    def test_non_fibration_counterexample(self, arrow):
        """Test that picking the codomain of [1] has no cartesian lift of f."""
        from fibrantkit.fincat import is_grothendieck_fibration, object_functor

        result = is_grothendieck_fibration(object_functor(arrow, "1"))

        assert not result
        assert result.counterexample == ("f", "*")

    def test_strict_fibre(self, arrow):
        """Test that a fibre of the first projection of [1] x [1] is a copy of [1]."""
        from fibrantkit.fincat import product_category, strict_fibre

        _, p1, _ = product_category(arrow, arrow)
        fibre = strict_fibre(p1, "0")

        assert len(fibre.objects) == 2
        assert len(fibre.morphisms) == 3

    def test_adjoints_of_functor_to_point(self, arrow):
        """Test that the right adjoint picks the terminal and the left the initial object."""
        from fibrantkit.fincat import constant_functor, find_left_adjoint, find_right_adjoint, terminal_category

        F = constant_functor(arrow, terminal_category(), "*")
        right = find_right_adjoint(F)
        left = find_left_adjoint(F)

        assert right is not None and right.right.obj("*") == "1"
        assert right.triangle_identities_hold()
        assert left is not None and left.left.obj("*") == "0"

    def test_picking_the_initial_object(self, arrow):
        """Test that picking the initial object has a right adjoint but no left adjoint."""
        from fibrantkit.fincat import find_left_adjoint, find_right_adjoint, object_functor

        F = object_functor(arrow, "0")
        right = find_right_adjoint(F)

        assert right is not None
        assert right.right.obj("0") == "*"
        assert right.right.obj("1") == "*"
        assert right.triangle_identities_hold()
        assert find_left_adjoint(F) is None

    def test_no_adjoint_for_discrete(self):
        """Test that a two-object discrete category has no adjoint to the point."""
        from fibrantkit.fincat import (
            constant_functor,
            discrete_category,
            find_left_adjoint,
            find_right_adjoint,
            terminal_category,
        )

        F = constant_functor(discrete_category(["a", "b"]), terminal_category(), "*")

        assert find_right_adjoint(F) is None
        assert find_left_adjoint(F) is None

    def test_pullback_category_mismatch(self, arrow):
        """Test that functors with different codomains cannot be pulled back."""
        from fibrantkit.fincat import arrow_category, identity_functor, pullback_category

        with pytest.raises(ValueError, match="common codomain"):
            pullback_category(identity_functor(arrow), identity_functor(arrow_category()))

    def test_pullback_along_identity(self, arrow):
        """Test that pulling back along the identity gives the diagonal."""
        from fibrantkit.fincat import identity_functor, pullback_category

        ident = identity_functor(arrow)
        Q, _, p2 = pullback_category(ident, ident)

        assert len(Q.objects) == 2
        assert len(Q.morphisms) == 3
        assert p2.is_isomorphism()


class TestDiagrams:
    """Tests for category-valued diagrams, oplax colimits and categories of elements."""

    @pytest.fixture
    def arrow(self):
        """Create the walking arrow 0 -> 1."""
        from fibrantkit.fincat import arrow_category

        return arrow_category()

    def test_oplax_colimit_of_constant(self, arrow):
        """Test that the oplax colimit of a constant diagram is the product."""
        from fibrantkit.fincat import constant_diagram, oplax_colimit

        K, projection = oplax_colimit(constant_diagram(arrow, arrow))

        assert len(K.objects) == 4
        assert len(K.morphisms) == 9
        assert projection.is_functor()

    def test_elements_of_representable(self, arrow):
        """Test that the category of elements of y(1) is the slice over 1."""
        from fibrantkit.fincat import category_of_elements, representable_diagram

        E, _ = category_of_elements(representable_diagram(arrow, "1"))

        assert set(E.objects) == {("0", "f"), ("1", "id_1")}
        assert E.terminal_objects() == [("1", "id_1")]

    def test_elements_needs_discrete(self, arrow):
        """Test that the category of elements refuses non-discrete diagrams."""
        from fibrantkit.fincat import category_of_elements, constant_diagram

        with pytest.raises(ValueError, match="discrete"):
            category_of_elements(constant_diagram(arrow, arrow))

    def test_oplax_to_elements_is_isomorphism(self, arrow):
        """Test the comparison from the oplax colimit to the category of elements."""
        from fibrantkit.fincat import oplax_to_elements, representable_diagram

        F = oplax_to_elements(representable_diagram(arrow, "1"))

        assert F.is_functor()
        assert F.is_isomorphism()

    def test_coslice_diagram_is_functorial(self, arrow):
        """Test that the coslice diagram passes the functoriality check."""
        from fibrantkit.fincat import coslice_diagram

        X = coslice_diagram(arrow)

        assert X.check() is X
