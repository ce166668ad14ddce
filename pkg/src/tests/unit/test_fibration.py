"""
Unit tests for fibration module
"""

import pytest
from hypothesis import given, settings, strategies as st

from catforge import corpus
from catforge.errors import ConstructionError, StructuralError
from catforge.fibration import (
    FiberedFunctor,
    IndexedFamily,
    choose_pullbacks,
    comma_projection,
    fiber,
    fill_in,
    grothendieck,
    is_cartesian,
    pullback_comparison,
    pullback_functor,
    roundtrip_check,
    validate_family,
    validate_fibered,
    validate_fibered_functor,
)
from catforge.fincat import FunctorData, discrete_category, find_isomorphism, identity_functor, product


@pytest.fixture
def slice_over_top():
    """θ: chain(3)/2 → chain(3)"""
    return comma_projection(corpus.chain(3), "2")


@pytest.fixture
def point_over_b(arrow):
    """Discrete {x} sitting over b in a → b (no lift of f)"""
    total = discrete_category(["x"])
    projection = FunctorData(total, arrow, {"x": "b"}, {"id_x": "id_b"}, name="x↦b")
    return FiberedFunctor(total, arrow, projection, name="x↦b")


class TestValidateFibered:
    """Test cases for validate_fibered and is_cartesian"""

    def test_comma_projection_is_fibered(self, slice_over_top):
        report = validate_fibered(slice_over_top)

        assert report.ok
        assert report.passed("fibered.lift")

    def test_missing_lift(self, point_over_b):
        """Test f: a → b has nothing over a to lift to"""
        report = validate_fibered(point_over_b)

        assert [v.instance for v in report.failures("fibered.lift")] == [("f", "x")]

    def test_identities_are_cartesian(self, slice_over_top):
        total = slice_over_top.total
        for d in total.objects():
            assert is_cartesian(slice_over_top, total.identity(d))

    def test_groupoid_morphisms_are_cartesian(self):
        """Test every morphism of a Grothendieck groupoid is cartesian"""
        fib = grothendieck(corpus.swap_family())

        assert all(is_cartesian(fib, g) for g in fib.total.morphisms())

    def test_require_groupoid(self, point_over_b):
        with pytest.raises(ConstructionError) as info:
            point_over_b.require_groupoid()

        assert info.value.witness == "f"

    def test_from_document(self):
        """Test the graded Z/2 projection onto the discrete Z/2 base"""
        fib = FiberedFunctor.from_document(corpus.graded_z2_document()["fibered"])

        assert fib.over("1") == ["1/0", "1/1"]
        assert validate_fibered(fib).ok

    def test_from_document_missing_key(self):
        with pytest.raises(StructuralError, match="missing key"):
            FiberedFunctor.from_document({"base": {}})


class TestPullbacks:
    """Test cases for choose_pullbacks, fiber and pullback_functor"""

    def test_identity_choice(self, slice_over_top):
        """Test pullbacks along identities are identities"""
        choice = choose_pullbacks(slice_over_top)

        assert choice.entry("id_2", "id_2") == ("id_2", ("id_2", "id_2", "id_2"))

    def test_choice_is_deterministic(self, slice_over_top):
        assert choose_pullbacks(slice_over_top).table == choose_pullbacks(slice_over_top).table

    @settings(max_examples=25, deadline=None)
    @given(st.data())
    def test_choice_is_deterministic_and_cartesian(self, data):
        """Test rebuilding a slice fibration chooses the same pullbacks and every lift factors through them"""
        base = data.draw(st.sampled_from([corpus.chain(2), corpus.chain(3), corpus.chain(4), corpus.z2_group()]))
        u = data.draw(st.sampled_from(base.objects()))
        fib = comma_projection(base, u)

        choice = choose_pullbacks(fib)

        assert choice.table == choose_pullbacks(comma_projection(base, u)).table
        total, theta = fib.total, fib.projection
        for (f, d2), (pulled, eta) in choice.table.items():
            assert theta.mor(eta) == f
            assert total.cod(eta) == d2
            assert is_cartesian(fib, eta)
            over = base.identity(base.dom(f))
            for g in total.morphisms():
                if theta.mor(g) == f and total.cod(g) == d2:
                    k = fill_in(fib, total.dom(g), pulled, over, eta, g)
                    assert total.composite(eta, k) == g

    def test_not_fibered(self, point_over_b):
        with pytest.raises(ConstructionError) as info:
            choose_pullbacks(point_over_b)

        assert info.value.witness == ("f", "x")

    def test_fiber(self, slice_over_top):
        """Test each fiber of a slice is a single point"""
        for c in ("0", "1", "2"):
            assert len(fiber(slice_over_top, c).objects()) == 1

    def test_fiber_of_unknown_object(self, slice_over_top):
        with pytest.raises(StructuralError):
            fiber(slice_over_top, "9")

    def test_pullback_functor(self, slice_over_top):
        choice = choose_pullbacks(slice_over_top)

        star = pullback_functor(choice, "0<1")

        assert star.obj("1<2") == "0<2"

    def test_comparison_is_invertible(self, slice_over_top):
        choice = choose_pullbacks(slice_over_top)

        components, report = pullback_comparison(choice, "0<1", "1<2")

        assert report.ok
        assert report.passed("pullback.comparison_iso")
        assert list(components) == ["id_2"]

    def test_identity_is_fibered_functor(self, slice_over_top):
        fib = slice_over_top
        report = validate_fibered_functor(
            identity_functor(fib.total), fib, fib, identity_functor(fib.base)
        )

        assert report.ok


class TestGrothendieck:
    """Test cases for the Grothendieck construction and its round trip"""

    def test_swap_action_gives_iso_pair(self):
        """Test Z/2 acting on {0,1} by swapping gives the groupoid a ≅ b"""
        fib = grothendieck(corpus.swap_family())

        assert len(fib.total.objects()) == 2
        assert find_isomorphism(fib.total, corpus.iso_pair()) is not None

    def test_constant_family_gives_product(self, arrow, z2_group):
        fib = grothendieck(corpus.constant_family(arrow, z2_group))

        assert find_isomorphism(fib.total, product(z2_group, arrow)) is not None

    def test_non_functorial_family(self):
        """Test P(e) = swap is rejected before the construction"""
        family = corpus.swap_family()
        family.transitions["e"] = family.transitions["u"]

        assert validate_family(family).failed("family.identity")
        with pytest.raises(ConstructionError):
            grothendieck(family)

    def test_missing_transition(self, z2_group):
        family = IndexedFamily(z2_group, {"*": z2_group}, {})

        with pytest.raises(StructuralError, match="no transition"):
            validate_family(family)

    @pytest.mark.parametrize("family", corpus.pseudofunctor_families(), ids=lambda f: f.name)
    def test_roundtrip(self, family):
        """Test ∫P is fibered and its fibers and pullbacks recover P"""
        report = roundtrip_check(family)

        assert report.ok, report.render()
        assert report.passed("roundtrip.fiber_iso")

    def test_family_document_round_trip(self):
        family = corpus.representable_family(corpus.chain(3), "2")

        again = IndexedFamily.from_document(corpus.family_document(family))

        assert validate_family(again).ok
        assert again.along("0<1") == family.along("0<1")
