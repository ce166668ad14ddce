"""
Unit tests for corpus module
"""

import pytest
from jsonschema import Draft202012Validator

from catforge import corpus
from catforge.cli import load_schema
from catforge.errors import StructuralError
from catforge.fibration import validate_family
from catforge.fincat import validate_category
from catforge.monostruct import validate_permutative

MUTANTS = corpus.mutated_categories()


class TestMonoidTables:
    """Test cases for the commutative monoid tables"""

    @pytest.mark.parametrize("table", corpus.commutative_monoids(), ids=lambda t: t[0])
    def test_tables_are_permutative(self, table):
        report = validate_permutative(corpus.monoid_structure(table))

        assert report.ok, report.render()

    def test_unknown_boolean(self):
        with pytest.raises(StructuralError):
            corpus.boolean_table("xor")

    def test_is_deterministic(self):
        assert corpus.commutative_monoids() == corpus.commutative_monoids()


class TestMutants:
    """Test cases for mutated_categories and category_oracle"""

    def test_enough_mutants(self):
        assert len([m for m in MUTANTS if m.change]) >= 50

    def test_seeds_are_categories(self):
        for m in MUTANTS:
            if not m.change:
                assert corpus.category_oracle(m.category), m.origin

    @pytest.mark.parametrize("mutant", MUTANTS, ids=lambda m: f"{m.origin}:{m.change or 'seed'}")
    def test_validator_agrees_with_oracle(self, mutant):
        """Test validate_category and the direct table scan give the same verdict"""
        assert validate_category(mutant.category).ok == corpus.category_oracle(mutant.category)

    def test_dropped_composite_is_caught(self):
        dropped = next(m for m in MUTANTS if m.change.startswith("drop"))

        assert not corpus.category_oracle(dropped.category)


class TestDocuments:
    """Test cases for corpus_documents"""

    @pytest.fixture(scope="class")
    def documents(self):
        return corpus.corpus_documents()

    def test_every_document_matches_schema(self, documents):
        validator = Draft202012Validator(load_schema())

        for stem, doc in documents.items():
            errors = list(validator.iter_errors(doc))
            assert not errors, f"{stem}: {errors[0].message}"

    def test_stems_are_slugs(self, documents):
        assert all(stem == stem.lower() and " " not in stem for stem in documents)
        assert "ring-broken" in documents
        assert "fibered-graded-z2" in documents

    def test_families_are_valid(self):
        for family in corpus.pseudofunctor_families():
            assert validate_family(family).ok, family.name

    def test_chain_composition(self):
        c = corpus.chain(4)

        assert c.compose("1<3", "0<1") == "0<3"
        assert validate_category(c).ok
