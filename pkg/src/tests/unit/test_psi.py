"""
Unit tests for psi module
"""

import pytest

from catforge.bounds import PsiBounds
from catforge.errors import StructuralError
from catforge.psi import Psi, PsiObject, psi_build, unit_fiber_check, validate_psi

SMALL = PsiBounds(length=1, summands=1, objects=2, sample=60)


@pytest.fixture
def psi(z2_strict):
    return Psi(z2_strict, SMALL)


class TestPsi:
    """Test cases for Psi over the Z/2 rig"""

    def test_unit_row(self, psi):
        """Test 1 is the single row with the ⊠-unit as scalar"""
        assert psi.one.base == ()
        assert psi.theta(psi.one) == "1"
        assert psi.one in psi.window(())

    def test_wreath_is_truncated(self, psi):
        assert psi.wreath.report.bounds["cap"] == 1
        assert sorted(psi.wreath.category.objects(), key=len) == [(), ("*",)]

    def test_zero_is_neutral(self, psi):
        zero = PsiObject(("*",), ())
        for x in psi.window(("*",)):
            assert psi.add_obj(x, zero) == x
            assert psi.add_obj(zero, x) == x

    def test_sum_over_different_bases(self, psi):
        with pytest.raises(StructuralError):
            psi.add_obj(psi.one, PsiObject(("*",), ()))

    def test_window_respects_summands(self, psi):
        assert all(len(x.rows) <= 1 for x in psi.window(("*",)))


class TestPsiBuild:
    """Test cases for psi_build and unit_fiber_check"""

    def test_unit_fiber(self, psi):
        """Test Ψ(()) agrees with the fiber over the unit"""
        report = unit_fiber_check(psi)

        assert report.ok, report.render()
        assert report.passed("psi.unit_fiber.full")
        assert report.passed("psi.unit_fiber.essential")

    def test_build_empty_base(self, z2_strict, psi):
        build = psi_build(z2_strict, (), psi=psi)

        assert build.report.ok, build.report.render()
        assert build.report.passed("psi.zero")
        assert build.report.passed("psi.unit_fiber.full")

    def test_build_single(self, z2_strict, psi):
        build = psi_build(z2_strict, ("*",), psi=psi)

        assert build.report.ok, build.report.render()
        assert build.maps

    def test_base_outside_truncation(self, z2_strict, psi):
        with pytest.raises(StructuralError, match="is not an object"):
            psi_build(z2_strict, ("*", "*"), psi=psi)


@pytest.mark.slow
class TestValidatePsi:
    """Test cases for validate_psi"""

    def test_ring_conditions(self, z2_strict):
        report = validate_psi(Psi(z2_strict, PsiBounds(length=2, summands=1, objects=2, sample=40)))

        assert report.ok, report.render()
        for name in ("c.1", "c.4", "c.7", "c.11", "c.14"):
            assert report.passed(name), name
