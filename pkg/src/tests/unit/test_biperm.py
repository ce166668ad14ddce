"""
Unit tests for biperm module
"""

import pytest

from catforge import corpus
from catforge.biperm import (
    BipermData,
    FiberBipermData,
    validate_bipermutative,
    validate_fibered_biperm,
    validate_symbimon,
)
from catforge.errors import StructuralError

BITS = ["0", "1"]
XOR = {(a, b): str(int(a) ^ int(b)) for a in BITS for b in BITS}
OR = {(a, b): str(int(a) | int(b)) for a in BITS for b in BITS}
OVER_POINT = [corpus.z2_rig(), corpus.boolean_rig(), corpus.rig(BITS, OR, "0", OR, "0", "or-or")]
SHARED = ["1", "2", "3", "4", "5", "zero", "typing", "add.assoc.objects", "mult.gamma.hexagon", "mult.tensor.compose"]


class TestValidateBipermutative:
    """Test cases for validate_bipermutative"""

    def test_z2_rig(self, z2_rig):
        """Test Z/2 with xor and and passes every diagram"""
        report = validate_bipermutative(z2_rig)

        assert report.ok, report.render()
        for name in ("a.1", "a.2", "a.3", "a.4", "a.5", "a.zero", "a.natural"):
            assert report.passed(name), name

    def test_boolean_rig(self, boolean_rig):
        assert validate_bipermutative(boolean_rig).ok

    def test_sampled_run_records_bound(self, z2_rig):
        report = validate_bipermutative(z2_rig, sample=3)

        assert report.ok
        assert report.bounds["sample"] == 3

    def test_zero_not_absorbing(self):
        """Test (or, or) distributes but 0 does not annihilate"""
        report = validate_bipermutative(corpus.rig(BITS, OR, "0", OR, "0", "or-or"))

        assert report.failed("a.zero")
        assert report.passed("a.1")

    def test_not_distributive(self):
        """Test (xor, or) gives a mistyped d^l, which is structural"""
        with pytest.raises(StructuralError, match="d\\^l"):
            validate_bipermutative(corpus.rig(BITS, XOR, "0", OR, "0", "xor-or"))

    def test_document_round_trip(self, z2_rig):
        again = BipermData.from_document(corpus.rig_document(z2_rig))

        assert again.category == z2_rig.category
        assert again.d_left == z2_rig.d_left
        assert validate_bipermutative(again).ok

    def test_document_missing_key(self):
        with pytest.raises(StructuralError, match="missing key"):
            BipermData.from_document({"category": {}})


class TestValidateFiberedBiperm:
    """Test cases for validate_fibered_biperm"""

    def test_rig_over_point(self, z2_rig):
        report = validate_fibered_biperm(z2_rig.as_fibered())

        assert report.ok, report.render()
        for name in ("b.6", "b.7", "b.8", "b.9", "b.10", "b.strict.objects"):
            assert report.passed(name), name

    def test_from_fibered_document(self, boolean_rig):
        doc = corpus.rig_over_terminal_document(boolean_rig)

        d = FiberBipermData.from_document(doc)

        assert validate_fibered_biperm(d).ok

    @pytest.mark.parametrize("r", OVER_POINT, ids=lambda r: r.name)
    def test_agrees_with_bipermutative(self, r):
        """Test a rig over the terminal base gets the same verdict, diagram by diagram"""
        plain = validate_bipermutative(r)
        fibered = validate_fibered_biperm(r.as_fibered())

        for name in SHARED:
            assert plain.failed(f"a.{name}") == fibered.failed(f"b.{name}"), name
            assert plain.counts.get(f"a.{name}") == fibered.counts.get(f"b.{name}"), name
        assert plain.failed("a.natural") == fibered.failed("b.10")
        assert plain.counts["a.natural"] == fibered.counts["b.10"]

    def test_corrupted_zero_lift(self):
        """Test 0 over the identity sent to the non-trivial automorphism fails functoriality of 0_f"""
        group = corpus.z2_group_permutative()
        one = {("*", "*", "*"): "e"}
        fib = BipermData(group.category, group, group, one, one, name="Z/2 group").as_fibered()
        corrupted = FiberBipermData(
            fib.fibered,
            fib.mult,
            fib.base_mult,
            fib.fiber_add,
            fib.d_left_table,
            fib.d_right_table,
            zero_lift={fib.base.identity("*"): "u"},
            name="corrupted",
        )

        report = validate_fibered_biperm(corrupted)

        assert report.failed("b.zero_functorial")
        assert report.failed("b.zero_identity")
        assert "CHECK b.zero_functorial FAIL" in report.render()
        assert validate_fibered_biperm(fib).passed("b.zero_functorial")


class TestValidateSymbimon:
    """Test cases for validate_symbimon"""

    @pytest.mark.parametrize("build", [corpus.z2_fibered, corpus.boolean_fibered, corpus.graded_z2])
    def test_corpus_examples(self, build):
        report = validate_symbimon(build())

        assert report.ok, report.render()
        assert report.passed("symbimon.projection.map.unit")

    def test_typing_is_checked_per_instance(self):
        """Test every d^l and d^r instance of the Z/2 rig is typed and recorded"""
        report = validate_symbimon(corpus.z2_fibered())

        assert report.passed("symbimon.typing")
        assert report.counts["symbimon.typing"] >= 16

    def test_graded_has_two_fibers(self):
        d = corpus.graded_z2()

        assert sorted(d.fiber_add) == ["0", "1"]
        assert d.zero("1") == "1/0"
        assert d.add_obj("1/1", "1/1") == "1/0"

    def test_sum_across_fibers(self):
        d = corpus.graded_z2()

        with pytest.raises(StructuralError, match="different fibers"):
            d.add_obj("0/1", "1/1")

    def test_mistyped_distributor(self):
        """Test a d^l row pointing at the wrong identity"""
        doc = corpus.rig_over_terminal_document(corpus.z2_rig())
        for row in doc["d_left"]:
            if row[:3] == ["1", "0", "1"]:
                row[3] = "id_0"

        with pytest.raises(StructuralError, match="d\\^l"):
            validate_symbimon(corpus.symbimon(doc))
