"""
Unit tests for wreath module
"""

import pytest
from hypothesis import given, strategies as st

from catforge import corpus
from catforge.errors import BoundsError, ConstructionError, StructuralError
from catforge.fincat import opposite
from catforge.monostruct import one_object_permutative
from catforge.wreath import (
    WreathMorphism,
    block_swap,
    build_wreath,
    compose_inj,
    identity_inj,
    make_inj,
    projection_W,
    q_star,
    sum_inj,
    wreath_compose,
)


@pytest.fixture(scope="module")
def z2_wreath():
    return build_wreath(corpus.z2_group(), 2)


class TestInjections:
    """Test cases for the injection helpers"""

    def test_make_inj_rejects_repeats(self):
        with pytest.raises(StructuralError):
            make_inj(3, [1, 1])

    def test_make_inj_rejects_out_of_range(self):
        with pytest.raises(StructuralError):
            make_inj(2, [3])

    def test_compose(self):
        """Test p∘q evaluates q first"""
        q = make_inj(2, [2])
        p = make_inj(3, [3, 1])

        assert compose_inj(p, q).values == (1,)

    def test_identity_is_neutral(self):
        q = make_inj(3, [3, 1])

        assert compose_inj(identity_inj(3), q) == q
        assert compose_inj(q, identity_inj(2)) == q

    def test_block_swap(self):
        assert block_swap(1, 2).values == (3, 1, 2)

    def test_sum(self):
        assert sum_inj(make_inj(2, [2]), make_inj(1, [1])).values == (2, 3)

    def test_q_star_fills_unit(self):
        assert q_star(make_inj(3, [2]), ("a",), "1") == ("1", "a", "1")

    def test_q_star_length(self):
        with pytest.raises(StructuralError):
            q_star(make_inj(3, [2]), ("a", "b"), "1")


@st.composite
def injections(draw, n=None, m=None):
    """Draw an injection n → m, drawing the sizes when not given"""
    if n is None:
        n = draw(st.integers(0, 4))
    if m is None:
        m = draw(st.integers(n, n + 3))
    return make_inj(m, draw(st.permutations(range(1, m + 1)))[:n])


@st.composite
def composable(draw, length):
    """Draw a chain of composable injections, applied first to last"""
    sizes = [draw(st.integers(0, 3))]
    for _ in range(length):
        sizes.append(sizes[-1] + draw(st.integers(0, 2)))
    return [draw(injections(a, b)) for a, b in zip(sizes, sizes[1:])]


class TestInjLaws:
    """Test cases for the category laws of finite sets and injections"""

    @given(composable(3))
    def test_composition_is_associative(self, chain):
        q, p, r = chain

        assert compose_inj(r, compose_inj(p, q)) == compose_inj(compose_inj(r, p), q)

    @given(injections())
    def test_identities_are_neutral(self, q):
        assert compose_inj(identity_inj(q.m), q) == q
        assert compose_inj(q, identity_inj(q.n)) == q

    @given(injections())
    def test_preimage_inverts(self, q):
        assert all(q.preimage(q(i)) == i for i in range(1, q.n + 1))
        assert sum(q.preimage(j) is None for j in range(1, q.m + 1)) == q.m - q.n

    @given(composable(2), composable(2))
    def test_sum_is_functorial(self, left, right):
        """Test (p⊕p′)∘(q⊕q′) = (p∘q)⊕(p′∘q′)"""
        (q, p), (q2, p2) = left, right

        assert compose_inj(sum_inj(p, p2), sum_inj(q, q2)) == sum_inj(compose_inj(p, q), compose_inj(p2, q2))

    @given(injections(), injections())
    def test_block_swap_is_natural(self, q, r):
        """Test ξ∘(q⊕r) = (r⊕q)∘ξ"""
        assert compose_inj(block_swap(q.m, r.m), sum_inj(q, r)) == compose_inj(sum_inj(r, q), block_swap(q.n, r.n))

    @given(st.integers(0, 4), st.integers(0, 4))
    def test_block_swap_is_involutive(self, n, p):
        assert compose_inj(block_swap(p, n), block_swap(n, p)) == identity_inj(n + p)

    @given(composable(2))
    def test_q_star_is_functorial(self, chain):
        """Test (p∘q)^* = p^*∘q^* on labelled tuples"""
        q, p = chain
        objs = tuple(f"x{i}" for i in range(1, q.n + 1))

        assert q_star(compose_inj(p, q), objs, "1") == q_star(p, q_star(q, objs, "1"), "1")


class TestBuildWreath:
    """Test cases for build_wreath"""

    def test_z2_cap_two(self, z2_wreath):
        """Test 3 objects and 25 morphisms up to length 2"""
        assert len(z2_wreath.category.objects()) == 3
        assert len(z2_wreath.category.morphisms()) == 25
        assert z2_wreath.report.ok, z2_wreath.report.render()
        assert z2_wreath.report.bounds["cap"] == 2

    def test_tensor_is_concatenation(self, z2_wreath):
        assert z2_wreath.structure.tensor_obj(("*",), ("*",)) == ("*", "*")
        assert z2_wreath.structure.unit == ()

    def test_composition_multiplies_hit_components(self, z2_wreath):
        """Test the component at p(j) absorbs f_j"""
        cop = z2_wreath.base_op
        first = WreathMorphism(("*",), ("*",), identity_inj(1), ("u",))
        second = WreathMorphism(("*",), ("*", "*"), make_inj(2, [2]), ("u", "u"))

        result = wreath_compose(cop, second, first)

        assert result.q.values == (2,)
        assert result.components == ("u", "e")

    def test_iso_pair(self):
        result = build_wreath(corpus.iso_pair(), 1, unit="a")

        assert result.report.ok, result.report.render()

    def test_cap_too_small(self, z2_group):
        with pytest.raises(BoundsError):
            build_wreath(z2_group, 0)

    def test_not_a_groupoid(self, arrow):
        with pytest.raises(ConstructionError) as info:
            build_wreath(arrow, 1, unit="a")

        assert info.value.witness == "f"

    def test_unit_required(self):
        with pytest.raises(StructuralError, match="unit object required"):
            build_wreath(corpus.iso_pair(), 1)


class TestProjection:
    """Test cases for projection_W"""

    def test_strict_map_to_opposite(self, z2_wreath):
        base_op = one_object_permutative(opposite(corpus.z2_group()))

        functor, report = projection_W(z2_wreath, base_op)

        assert report.ok, report.render()
        assert functor.obj(("*", "*")) == "*"

    def test_requires_structure(self, z2_wreath):
        with pytest.raises(StructuralError):
            projection_W(z2_wreath, None)
