"""
Unit tests for strictifier module
"""

import time

import pytest

from catforge import corpus
from catforge.bounds import Window
from catforge.errors import StructuralError
from catforge.monostruct import validate_symmetric_monoidal
from catforge.strictifier import (
    StrictMorphism,
    StrictTotalObject,
    equivalence_check,
    strictification_morphism,
    strictify_base,
    strictify_total,
    validate_strict_base,
    validate_strictified,
    window_document,
)


class TestStrictifyBase:
    """Test cases for strictify_base"""

    def test_objects_are_sequences(self, z2_monoid):
        """Test sequences of length ≤ 2 over {0,1}: 1 + 2 + 4"""
        base = strictify_base(z2_monoid, Window(seq=2))

        assert len(base.category.objects()) == 7
        assert base.category.evaluate(("1", "1")) == "0"
        assert base.category.evaluate(()) == "0"

    def test_concatenation(self, z2_monoid):
        base = strictify_base(z2_monoid, Window(seq=2))

        assert base.structure.tensor_obj(("1",), ("0", "1")) == ("1", "0", "1")
        assert base.structure.unit == ()

    def test_validate_discrete(self, z3_monoid):
        report = validate_strict_base(strictify_base(z3_monoid, Window(seq=2)))

        assert report.ok, report.render()
        assert report.passed("strict.assoc.objects")
        assert report.bounds["seq"] == 2

    def test_validate_super_z2(self):
        """Test the sign rule survives strictification"""
        base = strictify_base(corpus.super_z2(), Window(seq=2))

        report = validate_strict_base(base)

        assert report.ok, report.render()
        assert report.passed("strict.gamma.hexagon")

    def test_gamma_of_odd_pair(self):
        base = strictify_base(corpus.super_z2(), Window(seq=2))

        assert base.structure.gamma(("1",), ("1",)) == StrictMorphism(("1", "1"), ("1", "1"), "neg_0")

    def test_base_equivalence(self, z2_monoid):
        report = equivalence_check(strictify_base(z2_monoid, Window(seq=2)))

        assert report.ok
        assert report.passed("equivalence.embed_phi_natural")

    def test_non_strict_associator(self):
        """Test a commutative non-associative product on a codiscrete category at the default window"""
        magma = corpus.codiscrete_magma()
        assert magma.associator("a", "a", "b") == "c>b"
        assert validate_symmetric_monoidal(magma).ok

        base = strictify_base(magma)

        assert base.structure.merge(("a", "a"), ("b",)) == "c>b"
        assert base.structure.tensor_obj(("a", "a"), ("b",)) == ("a", "a", "b")
        report = validate_strict_base(base)
        assert report.ok, report.render()
        assert report.passed("strict.assoc.morphisms")
        assert report.passed("strict.gamma.hexagon")
        assert report.bounds == {"seq": 3, "summands": 3, "sample": "all"}
        assert equivalence_check(base).ok


class TestStrictifyTotal:
    """Test cases for strictify_total over the Z/2 rig"""

    def test_unit_and_zero(self, z2_strict):
        """Test Θ sends the ⊠-unit to 1 and the empty sum to 0"""
        assert z2_strict.theta(z2_strict.unit_object) == "1"
        assert z2_strict.theta(z2_strict.zero(())) == "0"

    def test_theta_after_embedding(self, z2_strict):
        for x in ("0", "1"):
            assert z2_strict.theta(z2_strict.embed_object(x)) == x

    def test_sum_is_concatenation(self, z2_strict):
        x = z2_strict.embed_object("1")

        total = z2_strict.add_obj(x, x)

        assert len(total.summands) == 2
        assert z2_strict.theta(total) == "0"

    def test_sum_over_different_bases(self, z2_strict):
        with pytest.raises(StructuralError):
            z2_strict.add_obj(z2_strict.zero(()), z2_strict.zero(("*",)))

    def test_window_objects_are_well_formed(self, z2_strict):
        objects = z2_strict.window_objects()

        assert objects
        assert all(isinstance(x, StrictTotalObject) for x in objects)
        assert all(z2_strict.well_formed(x) for x in objects)

    def test_validate_strictified(self, z2_strict):
        """Test (b.1)–(b.10) on the window with d^l the identity"""
        report = validate_strictified(z2_strict)

        assert report.ok, report.render()
        assert report.passed("b.d_left_identity")
        assert report.bounds["summands"] == 2

    def test_equivalence(self, z2_strict):
        report = equivalence_check(z2_strict)

        assert report.ok, report.render()
        assert report.passed("equivalence.theta_embed")
        assert report.passed("equivalence.square")

    def test_theta_is_a_morphism(self, z2_strict):
        report = strictification_morphism(z2_strict)

        assert report.ok, report.render()

    def test_window_document(self, z2_strict):
        doc = window_document(z2_strict, limit=5)

        assert doc["bounds"]["seq"] == 2
        assert len(doc["sample_objects"]) <= 5
        assert doc["objects"] == len(z2_strict.window_objects())

    def test_window_is_exhaustive(self, z2_strict):
        """Test every object whose footprint fits (2, 2) is present: 25 over (), 9 over (*), 3 over (*, *)"""
        objects = z2_strict.window_objects()

        assert len(objects) == 37
        assert len(set(objects)) == 37
        assert len(z2_strict.objects_over(("*", "*"))) == 3
        assert z2_strict.footprint(z2_strict.embed_object("1")) == (2, 1)

    def test_default_run_is_not_sampled(self, z2_strict):
        report = validate_strictified(z2_strict)

        assert report.bounds["sample"] == "all"
        assert not [text for text in report.notes if "sampled" in text]

    def test_sampling_is_opt_in(self):
        """Test an explicit sample shows in the header and in a note"""
        result = strictify_total(corpus.z2_fibered(), Window(seq=2, summands=2, sample=5))

        report = validate_strictified(result)

        assert report.ok, report.render()
        assert "# bounds sample=5 seq=2 summands=2" in report.lines()
        assert any("instances sampled" in text for text in report.notes)

    @pytest.mark.slow
    @pytest.mark.parametrize("build", [corpus.z2_fibered, corpus.boolean_fibered])
    def test_rig_window_three(self, build):
        """Test the rig examples at the default window within 30 seconds"""
        start = time.monotonic()

        result = strictify_total(build())
        report = validate_strictified(result)
        equivalence = equivalence_check(result)

        assert time.monotonic() - start < 30
        assert report.ok, report.render()
        assert report.bounds == {"seq": 3, "summands": 3, "sample": "all"}
        assert report.passed("b.d_left_identity")
        assert report.passed("b.4")
        assert equivalence.ok, equivalence.render()
        assert equivalence.passed("equivalence.embed_theta_natural")

    @pytest.mark.slow
    def test_graded_window_three(self):
        """Test the graded example over the discrete Z/2 base with the default window"""
        result = strictify_total(corpus.graded_z2(), Window(seq=3, summands=3))

        report = validate_strictified(result)

        assert report.ok, report.render()
        assert equivalence_check(result).ok
