"""
Unit tests for fincat module
"""

import pytest
from hypothesis import given, settings, strategies as st

from catforge.corpus import chain, iso_pair
from catforge.errors import BoundsError, ComposabilityError, StructuralError
from catforge.fincat import (
    FinCategory,
    FunctorData,
    NatTransData,
    compose_functors,
    compose_path,
    coproduct,
    find_isomorphism,
    identity_functor,
    nerve_count,
    one_object_category,
    opposite,
    pi0,
    product,
    validate_category,
    validate_functor,
    validate_natural,
)

Z2_TABLE = {("e", "e"): "e", ("e", "u"): "u", ("u", "e"): "u", ("u", "u"): "e"}


class TestValidateCategory:
    """Test cases for validate_category"""

    def test_terminal_is_valid(self, terminal_category):
        """Test the terminal category passes every check"""
        report = validate_category(terminal_category)

        assert report.ok
        assert report.passed("category.unit")

    def test_z2_group_is_valid(self, z2_group):
        """Test Z/2 passes all 8 associativity triples"""
        report = validate_category(z2_group)

        assert report.ok
        assert report.counts["category.assoc"] == 8

    def test_idempotent_redirect_is_valid(self):
        """Test u∘u := u gives the idempotent monoid, which is a category"""
        table = dict(Z2_TABLE)
        table[("u", "u")] = "u"
        cat = one_object_category(["e", "u"], table, "e")

        assert validate_category(cat).ok

    def test_broken_unit_is_reported(self):
        """Test u∘e := e breaks the unit law and associativity at (u,u,u)"""
        table = dict(Z2_TABLE)
        table[("u", "e")] = "e"
        report = validate_category(one_object_category(["e", "u"], table, "e"))

        assert not report.ok
        assert report.failed("category.unit")
        assert ("u", "u", "u") in [v.instance for v in report.failures("category.assoc")]

    def test_missing_composite(self, arrow):
        """Test a dropped composite is flagged as not composable"""
        table = arrow.composition_table
        del table[("f", "id_a")]
        cat = FinCategory(arrow.objects(), arrow.morphism_table, arrow.identity_table, table)

        report = validate_category(cat)

        assert report.failed("category.composable")

    def test_unknown_endpoint_is_structural(self):
        """Test a morphism with an unknown endpoint is a structural error"""
        with pytest.raises(StructuralError):
            FinCategory(["a"], {"f": ("a", "b")}, {"a": "f"}, {})

    def test_document_round_trip(self, arrow):
        """Test to_document / from_document preserve the tables"""
        doc = arrow.to_document()

        assert FinCategory.from_document(doc) == arrow

    def test_document_rejects_unknown_keys(self, arrow):
        """Test unknown keys in a category document"""
        doc = arrow.to_document()
        doc["extra"] = []

        with pytest.raises(StructuralError, match="unknown keys"):
            FinCategory.from_document(doc)


class TestComposePath:
    """Test cases for compose_path"""

    def test_single_identity(self, arrow):
        assert compose_path(arrow, ["id_a"]) == "id_a"

    def test_group_square(self, z2_group):
        """Test [u,u] → e in Z/2"""
        assert compose_path(z2_group, ["u", "u"]) == "e"

    def test_not_composable(self, arrow):
        """Test f after f is rejected"""
        with pytest.raises(ComposabilityError):
            compose_path(arrow, ["f", "f"])

    def test_empty_chain(self, arrow):
        with pytest.raises(StructuralError):
            compose_path(arrow, [])

    def test_chain_order(self):
        """Test the last morphism is applied first"""
        cat = chain(3)

        assert compose_path(cat, ["1<2", "0<1"]) == "0<2"


class TestFunctors:
    """Test cases for validate_functor and validate_natural"""

    def test_identity_functor(self, z2_group):
        assert validate_functor(identity_functor(z2_group)).ok

    def test_constant_to_terminal(self, arrow, terminal_category):
        """Test the constant functor to the terminal category"""
        functor = FunctorData(
            arrow,
            terminal_category,
            {x: "*" for x in arrow.objects()},
            {f: "id_*" for f in arrow.morphisms()},
        )

        assert validate_functor(functor).ok

    def test_swap_breaks_identity(self, z2_group):
        """Test the map swapping e and u does not preserve the identity"""
        functor = FunctorData(z2_group, z2_group, {"*": "*"}, {"e": "u", "u": "e"})

        report = validate_functor(functor)

        assert report.failed("functor.identity")

    def test_composite_of_identities(self, z2_group):
        ident = identity_functor(z2_group)

        assert compose_functors(ident, ident) == ident

    def test_central_component(self, z2_group):
        """Test u is a natural endo-transformation of the identity (Z/2 is abelian)"""
        ident = identity_functor(z2_group)
        t = NatTransData(ident, ident, {"*": "u"})

        assert validate_natural(t).ok

    def test_component_with_wrong_type(self, arrow):
        ident = identity_functor(arrow)
        t = NatTransData(ident, ident, {"a": "f", "b": "id_b"})

        report = validate_natural(t)

        assert report.failed("natural.typing")


class TestConstructions:
    """Test cases for opposite, product, coproduct, pi0 and nerve_count"""

    def test_opposite_of_arrow(self, arrow):
        """Test the arrow flips"""
        op = opposite(arrow)

        assert op.dom("f") == "b"
        assert op.cod("f") == "a"
        assert validate_category(op).ok

    def test_opposite_of_abelian_group(self, z2_group):
        assert opposite(z2_group) == z2_group

    def test_opposite_is_involutive(self, arrow):
        assert opposite(opposite(arrow)) == arrow

    def test_klein_product(self, z2_group):
        """Test Z/2 × Z/2 has one object and four morphisms"""
        klein = product(z2_group, z2_group)

        assert len(klein.objects()) == 1
        assert len(klein.morphisms()) == 4
        assert klein.compose(("u", "e"), ("u", "u")) == ("e", "u")
        assert validate_category(klein).ok

    def test_product_with_terminal(self, arrow, terminal_category):
        assert find_isomorphism(product(arrow, terminal_category), arrow) is not None

    def test_pi0(self, three_points, z2_group, arrow, terminal_category):
        """Test connected components"""
        assert len(pi0(three_points)) == 3
        assert len(pi0(z2_group)) == 1
        assert len(pi0(coproduct(arrow, terminal_category))) == 2

    def test_nerve_counts(self, terminal_category, three_points, z2_group):
        assert nerve_count(terminal_category, 2) == 1
        assert nerve_count(three_points, 1) == 3
        assert nerve_count(z2_group, 2) == 4

    def test_nerve_cap(self, z2_group):
        with pytest.raises(BoundsError):
            nerve_count(z2_group, 7)

    def test_find_isomorphism_between_groupoids(self, z2_group):
        """Test the iso pair is not isomorphic to Z/2"""
        assert find_isomorphism(iso_pair(), z2_group) is None
        assert find_isomorphism(iso_pair(), iso_pair()) is not None

    def test_groupoid(self, z2_group, arrow):
        assert z2_group.is_groupoid()
        assert not arrow.is_groupoid()
        assert z2_group.inverse("u") == "u"


class TestChainProperties:
    """Property tests on total orders"""

    @settings(max_examples=20, deadline=None)
    @given(st.integers(min_value=1, max_value=5))
    def test_chain_is_category(self, n):
        """Test every chain is a valid category with n(n+1)/2 morphisms"""
        cat = chain(n)

        assert validate_category(cat).ok
        assert len(cat.morphisms()) == n * (n + 1) // 2
        assert nerve_count(cat, 1) == n * (n + 1) // 2
