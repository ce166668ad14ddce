"""
Unit tests for ringdata module
"""

import pytest

from catforge import corpus
from catforge.bounds import MultiBounds
from catforge.errors import StructuralError
from catforge.ringdata import (
    TableRingData,
    build_multifunctor,
    constant_ring_data,
    ring_data_from_rig,
    ring_tables,
    validate_ring_data,
)

SMALL = MultiBounds(arity=2, sample=60)


@pytest.fixture
def z2_ring(z2_rig):
    return ring_data_from_rig(z2_rig)


class TestValidateRingData:
    """Test cases for validate_ring_data"""

    def test_rig_over_point(self, z2_ring):
        report = validate_ring_data(z2_ring)

        assert report.ok, report.render()
        for name in ("c.1", "c.2", "c.3", "c.4", "c.7", "c.8", "c.9", "c.10", "c.11", "c.12", "c.13", "c.14"):
            assert report.passed(name), name

    def test_boolean(self, boolean_rig):
        assert validate_ring_data(ring_data_from_rig(boolean_rig)).ok

    def test_constant_over_z2_group(self, z2_rig):
        """Test a constant functor out of a base with a nontrivial morphism"""
        d = constant_ring_data(corpus.z2_group_permutative(), z2_rig)

        report = validate_ring_data(d, sample=80)

        assert report.ok, report.render()
        assert report.passed("c.5")

    def test_broken_unit(self):
        """Test 1 := 0 breaks the unit condition"""
        report = validate_ring_data(corpus.broken_ring())

        assert report.failed("c.7")
        assert "c.7" in report.failed_checks()

    def test_without_mu(self, z2_rig):
        report = validate_ring_data(ring_data_from_rig(z2_rig, with_mu=False))

        assert report.ok
        assert not report.passed("c.11")

    def test_require_mu(self, z2_rig):
        with pytest.raises(StructuralError, match="μ required"):
            validate_ring_data(ring_data_from_rig(z2_rig, with_mu=False), require_mu=True)

    def test_document_round_trip(self, z2_ring):
        again = TableRingData.from_document(z2_ring.to_document())

        assert ring_tables(again) == ring_tables(z2_ring)
        assert validate_ring_data(again).ok

    def test_malformed_document(self, z2_ring):
        doc = z2_ring.to_document()
        del doc["one"]

        with pytest.raises(StructuralError, match="malformed ring document"):
            TableRingData.from_document(doc)


class TestBuildMultifunctor:
    """Test cases for build_multifunctor"""

    @pytest.mark.parametrize("mode", ["sigma", "esigma"])
    def test_rig_over_point(self, z2_ring, mode):
        build = build_multifunctor(z2_ring, cap=2, mode=mode, bounds=SMALL)

        assert build.report.ok, build.report.render()
        assert build.roundtrip
        assert build.report.passed("S.roundtrip")

    def test_esigma_checks_mu(self, z2_ring):
        build = build_multifunctor(z2_ring, cap=2, mode="esigma", bounds=SMALL)

        assert build.report.passed("S.mu")
        assert build.report.passed("S.mu_inverse")

    def test_extracted_unit(self, boolean_rig):
        d = ring_data_from_rig(boolean_rig)

        build = build_multifunctor(d, cap=2, bounds=SMALL)

        assert build.extracted.one == d.one

    def test_esigma_requires_mu(self, z2_rig):
        with pytest.raises(StructuralError, match="μ required"):
            build_multifunctor(ring_data_from_rig(z2_rig, with_mu=False), cap=2, mode="esigma")

    def test_unknown_mode(self, z2_ring):
        with pytest.raises(StructuralError, match="unknown multifunctor mode"):
            build_multifunctor(z2_ring, cap=2, mode="gamma")

    @pytest.mark.slow
    def test_cap_three(self, z2_ring):
        build = build_multifunctor(z2_ring, cap=3, mode="esigma", bounds=MultiBounds(arity=3, sample=120))

        assert build.report.ok, build.report.render()
        assert build.report.passed("S.delta_square")
