"""
Unit tests for monostruct module
"""

import pytest

from catforge import corpus
from catforge.errors import ConstructionError, StructuralError
from catforge.fincat import FunctorData, terminal
from catforge.monostruct import (
    MonoidalMap,
    PermutativeStructure,
    SymMonoidalStructure,
    discrete_from_monoid,
    identity_map,
    nested_permutation,
    one_object_permutative,
    opposite_permutative,
    tensor_all,
    tensor_all_morphisms,
    validate_monoidal_map,
    validate_permutative,
    validate_symmetric_monoidal,
)


class TestValidatePermutative:
    """Test cases for validate_permutative"""

    def test_terminal(self):
        """Test the trivial tensor on the terminal category"""
        p = discrete_from_monoid(["*"], {("*", "*"): "*"}, "*")

        assert validate_permutative(p).ok

    def test_z3_monoid(self, z3_monoid):
        """Test Z/3 checks all 27 associativity triples"""
        report = validate_permutative(z3_monoid)

        assert report.ok
        assert report.counts["assoc.objects"] == 27

    def test_or_monoid(self, or_monoid):
        assert validate_permutative(or_monoid).ok

    def test_super_z2_is_permutative(self):
        """Test the sign rule γ_{1,1} = -1 satisfies all diagrams"""
        p = corpus.super_z2()

        assert p.gamma("1", "1") == "neg_0"
        assert validate_permutative(p).ok

    def test_twisted_gamma_on_group(self):
        """Test γ := u on Z/2 keeps γ∘γ = id but breaks the unit and hexagon diagrams"""
        p = corpus.z2_group_permutative().with_gamma({("*", "*"): "u"})

        report = validate_permutative(p)

        assert report.passed("gamma.involution")
        assert report.failed("gamma.unit")
        assert report.failed("gamma.hexagon")

    def test_missing_table_entry(self, z2_monoid):
        """Test a missing tensor entry is a structural error"""
        objects = dict(z2_monoid.tensor_objects)
        del objects[("1", "1")]
        p = PermutativeStructure(z2_monoid.category, objects, z2_monoid.tensor_morphisms, "0", z2_monoid.gamma_table)

        with pytest.raises(StructuralError):
            validate_permutative(p)

    def test_opposite_of_super_z2(self):
        assert validate_permutative(opposite_permutative(corpus.super_z2())).ok

    def test_document_round_trip(self):
        p = corpus.super_z2()

        q = PermutativeStructure.from_document(p.to_document())

        assert q.category == p.category
        assert q.gamma_table == p.gamma_table


class TestSymmetricMonoidal:
    """Test cases for validate_symmetric_monoidal"""

    def test_identity_coherence(self, z2_monoid):
        """Test a permutative category seen with identity associators"""
        m = SymMonoidalStructure.from_permutative(z2_monoid)

        assert validate_symmetric_monoidal(m).ok

    def test_mistyped_associator(self):
        m = SymMonoidalStructure.from_permutative(corpus.super_z2())
        m.associator_table[("0", "0", "0")] = "neg_1"

        report = validate_symmetric_monoidal(m)

        assert report.failed("associator.typing")


class TestTensorHelpers:
    """Test cases for tensor_all and nested_permutation"""

    def test_tensor_all(self, z3_monoid):
        assert tensor_all(z3_monoid, ["1", "2", "2"]) == "2"
        assert tensor_all(z3_monoid, []) == "0"

    def test_tensor_all_morphisms_empty(self, z3_monoid):
        assert tensor_all_morphisms(z3_monoid, []) == "id_0"

    def test_swap_in_super_z2(self):
        """Test exchanging two odd objects picks up the sign"""
        p = corpus.super_z2()

        assert nested_permutation(p, ["1", "1"], [1, 0]) == "neg_0"
        assert nested_permutation(p, ["1", "0"], [1, 0]) == "id_1"

    def test_identity_permutation(self, z3_monoid):
        assert nested_permutation(z3_monoid, ["1", "2", "1"], [0, 1, 2]) == "id_1"

    def test_not_a_permutation(self, z3_monoid):
        with pytest.raises(StructuralError):
            nested_permutation(z3_monoid, ["1", "2"], [0, 0])


class TestMonoidalMaps:
    """Test cases for validate_monoidal_map"""

    def test_identity_is_strict(self, z3_monoid):
        assert validate_monoidal_map(identity_map(z3_monoid)).ok

    def test_weakened_identity_is_lax(self, z3_monoid):
        """Test strict → lax weakening with identity λ and η"""
        report = validate_monoidal_map(identity_map(z3_monoid, "lax"))

        assert report.ok
        assert report.passed("eta.unit")

    def test_unit_not_preserved(self, z2_monoid):
        """Test a strict map with f(1) != 1"""
        cat = z2_monoid.category
        functor = FunctorData(cat, cat, {"0": "1", "1": "1"}, {"id_0": "id_1", "id_1": "id_1"})
        m = MonoidalMap(functor, z2_monoid, z2_monoid, "strict")

        report = validate_monoidal_map(m)

        assert report.failed("map.unit")

    def test_lax_without_lambda(self, z2_monoid):
        m = identity_map(z2_monoid)
        m.kind = "lax"

        with pytest.raises(StructuralError, match="λ missing"):
            validate_monoidal_map(m)

    def test_unknown_kind(self, z2_monoid):
        with pytest.raises(StructuralError):
            MonoidalMap(identity_map(z2_monoid).functor, z2_monoid, z2_monoid, "oplax")


class TestConstructors:
    """Test cases for discrete_from_monoid and one_object_permutative"""

    def test_z2_has_two_objects(self, z2_monoid):
        assert z2_monoid.category.objects() == ["0", "1"]
        assert z2_monoid.tensor_obj("1", "1") == "0"

    def test_non_commutative_table(self):
        """Test a right-zero monoid with adjoined unit is rejected"""
        elements = ["e", "a", "b"]
        op = {}
        for x in elements:
            for y in elements:
                op[(x, y)] = x if y == "e" else y

        with pytest.raises(ConstructionError) as info:
            discrete_from_monoid(elements, op, "e")

        assert info.value.witness is not None

    def test_partial_table(self):
        with pytest.raises(ConstructionError, match="not total"):
            discrete_from_monoid(["0", "1"], {("0", "0"): "0"}, "0")

    def test_group_category(self):
        p = one_object_permutative(corpus.z2_group())

        assert p.tensor_mor("u", "u") == "e"
        assert validate_permutative(p).ok

    def test_one_object_required(self):
        with pytest.raises(ConstructionError):
            one_object_permutative(corpus.iso_pair())

    def test_terminal_unit(self):
        with pytest.raises(StructuralError):
            PermutativeStructure(terminal(), {}, {}, "missing", {})
