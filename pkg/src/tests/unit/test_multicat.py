"""
Unit tests for multicat module
"""

from functools import reduce

import pytest

from catforge import corpus
from catforge.bounds import MultiBounds
from catforge.errors import BoundsError, ComposabilityError
from catforge.multicat import (
    TerminalMulticategory,
    adjacent_transpositions,
    all_perms,
    apply_perm,
    block_permutation,
    cell_compose,
    cell_identity,
    collapse_multifunctor,
    functor_multicat,
    identity_multifunctor,
    identity_perm,
    klinear_act,
    klinear_gamma,
    klinear_unit,
    perm_as_multicat,
    perm_compose,
    perm_inverse,
    perm_sum,
    pushforward,
    sigma_inclusion,
    sigma_multicat,
    transposition,
    unapply_perm,
    validate_cell,
    validate_klinear,
    validate_multicat,
    validate_multifunctor,
)

SMALL = MultiBounds(arity=2, functors=8, sample=60)


class TestPermutations:
    """Test cases for the Σ_k helpers"""

    def test_compose_applies_right_first(self):
        assert perm_compose((1, 0, 2), (0, 2, 1)) == (1, 2, 0)

    def test_inverse(self):
        p = (1, 2, 0)

        assert perm_compose(p, perm_inverse(p)) == identity_perm(3)

    def test_all_perms(self):
        assert len(all_perms(3)) == 6
        assert all_perms(3) == sorted(all_perms(3))
        assert all_perms(0) == [()]

    def test_apply_and_unapply(self):
        p = (2, 0, 1)

        assert apply_perm(p, "abc") == ("c", "a", "b")
        assert unapply_perm(p, apply_perm(p, "abc")) == ("a", "b", "c")

    def test_block_permutation(self):
        """Test swapping a block of 2 with a block of 1"""
        assert block_permutation((1, 0), [2, 1]) == (2, 0, 1)

    def test_perm_sum(self):
        assert perm_sum([(1, 0), (0,)]) == (1, 0, 2)

    @pytest.mark.parametrize("sigma", all_perms(4))
    def test_adjacent_decomposition(self, sigma):
        """Test σ is the composite of the returned adjacent transpositions"""
        steps = adjacent_transpositions(sigma)

        result = reduce(perm_compose, [transposition(4, i) for i in steps], identity_perm(4))

        assert result == sigma


class TestValidateMulticat:
    """Test cases for validate_multicat on concrete multicategories"""

    @pytest.mark.parametrize("enriched", [False, True])
    def test_sigma(self, enriched):
        report = validate_multicat(sigma_multicat(3, enriched=enriched))

        assert report.ok, report.render()
        assert report.passed("multi.assoc")
        assert report.passed("multi.equivariance.outer")

    def test_sigma_cells(self):
        report = validate_multicat(sigma_multicat(2, enriched=True))

        assert report.passed("multi.cells.action")

    def test_sigma_cap_limit(self):
        with pytest.raises(BoundsError):
            sigma_multicat(5)

    def test_terminal(self):
        assert validate_multicat(TerminalMulticategory(3)).ok

    def test_monoid_as_multicategory(self, z2_monoid):
        report = validate_multicat(perm_as_multicat(z2_monoid, 3))

        assert report.ok, report.render()

    def test_super_z2_as_multicategory(self):
        """Test signs in the permutation action are coherent"""
        report = validate_multicat(perm_as_multicat(corpus.super_z2(), 2))

        assert report.ok, report.render()

    def test_gamma_arity_mismatch(self):
        M = sigma_multicat(3)

        with pytest.raises(ComposabilityError):
            M.gamma(M.element((1, 0)), [M.unit("*")])

    def test_sigma_gamma_is_block_sum(self):
        M = sigma_multicat(3)

        composite = M.gamma(M.element((1, 0)), [M.element((1, 0)), M.unit("*")])

        assert composite.data == (2, 1, 0)


class TestKLinear:
    """Test cases for k-linear maps"""

    def test_unit_is_linear(self, z2_monoid):
        assert validate_klinear(klinear_unit(z2_monoid)).ok

    @pytest.mark.parametrize("index", [0, 1])
    def test_generators(self, index):
        f = corpus.pfragment_generators()[index]

        report = validate_klinear(f)

        assert report.ok, report.render()

    def test_commutative_product_is_symmetric(self):
        mult = corpus.pfragment_generators()[0]

        assert klinear_act((1, 0), mult) == mult

    def test_gamma_with_units(self):
        mult = corpus.pfragment_generators()[0]
        z2 = mult.target
        unit = klinear_unit(z2)

        assert klinear_gamma(mult, [unit, unit]) == mult

    def test_gamma_target_mismatch(self):
        mult, zero = corpus.pfragment_generators()

        with pytest.raises(ComposabilityError):
            klinear_gamma(mult, [zero, zero])

    def test_identity_cell(self):
        f = corpus.pfragment_generators()[0]
        alpha = cell_identity(f)

        assert validate_cell(alpha).ok
        assert cell_compose(alpha, alpha) == alpha


class TestMultifunctors:
    """Test cases for multifunctors and the functor multicategory"""

    def test_identity(self):
        assert validate_multifunctor(identity_multifunctor(sigma_multicat(3))).ok

    def test_sigma_inclusion(self):
        f = sigma_inclusion(sigma_multicat(3), sigma_multicat(3, enriched=True))

        assert validate_multifunctor(f).ok

    def test_collapse(self, z2_monoid):
        f = collapse_multifunctor(perm_as_multicat(z2_monoid, 3), TerminalMulticategory(3))

        assert validate_multifunctor(f).ok

    def test_functor_multicategory(self):
        """Test Σ^E for E the Z/2 group: only the constant functor exists"""
        M = functor_multicat(sigma_multicat(2), corpus.z2_group_permutative(), SMALL)

        assert len(M.objects()) == 1
        assert validate_multicat(M, SMALL).ok

    def test_pushforward(self):
        E = corpus.z2_group_permutative()
        sigma, esigma = sigma_multicat(2), sigma_multicat(2, enriched=True)
        f = sigma_inclusion(sigma, esigma)
        source = functor_multicat(sigma, E, SMALL)
        target = functor_multicat(esigma, E, SMALL)

        report = validate_multifunctor(pushforward(f, source, target), SMALL)

        assert report.ok, report.render()

    @pytest.mark.slow
    def test_p_fragment(self):
        """Test the closure of the generators under Γ and σ* is a multicategory"""
        P = corpus.pfragment(cap=2, rounds=1, limit=80)

        report = validate_multicat(P, MultiBounds(arity=2, sample=80))

        assert report.ok, report.render()
