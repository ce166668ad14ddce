"""
Unit tests for groupcomp module
"""

import time

import pytest
from hypothesis import given, settings, strategies as st

from catforge import corpus
from catforge.errors import StructuralError
from catforge.groupcomp import (
    AbelianGroupPresentation,
    UnionFind,
    compose_triples,
    group_complete,
    grothendieck_group_oracle,
    inclusion,
    inclusion_injective_on_pi0,
    is_cancellative,
    k0,
    same_group,
    validate_completion,
    validate_group,
)

MONOIDS = corpus.commutative_monoids(max_order=6)
_COMPLETIONS = {}


def complete(table):
    p = corpus.monoid_structure(table)
    return group_complete(p.category, p)


def completed(table):
    """Complete each corpus monoid once per session"""
    if table[0] not in _COMPLETIONS:
        _COMPLETIONS[table[0]] = complete(table)
    return _COMPLETIONS[table[0]]


class TestUnionFind:
    """Test cases for UnionFind"""

    def test_representative_is_smallest(self):
        uf = UnionFind()
        uf.union("b", "c")
        uf.union("c", "a")

        assert uf.find("c") == "a"
        assert sorted(uf.blocks()["a"]) == ["a", "b", "c"]


class TestGroupComplete:
    """Test cases for group_complete and k0"""

    @pytest.mark.parametrize("table", MONOIDS, ids=lambda t: t[0])
    def test_k0_matches_grothendieck_group(self, table):
        """Test π₀ of the completion of a discrete monoid is its Grothendieck group"""
        _, elements, op, unit = table
        completion = completed(table)

        group = k0(completion)

        assert completion.certified
        assert validate_group(group).ok
        assert same_group(group, grothendieck_group_oracle(elements, op, unit))

    def test_z3_is_already_a_group(self):
        group = k0(complete(corpus.cyclic_table(3)))

        assert group.order == 3
        assert group.element_orders() == [1, 3, 3]

    def test_or_collapses(self):
        """Test 1 + 1 = 1 forces K₀ to be trivial"""
        assert k0(complete(corpus.boolean_table("or"))).order == 1

    def test_completion_report(self):
        completion = complete(corpus.cyclic_table(2))

        assert completion.report.ok, completion.report.render()
        assert completion.report.passed("completion.faithful")

    def test_validate_completion(self):
        """Test the category and permutative axioms of Z/2⁻¹Z/2 on every triple"""
        report = validate_completion(completed(corpus.cyclic_table(2)))

        assert report.ok, report.render()
        assert report.passed("completion.category.assoc")
        assert report.passed("completion.gamma.natural")

    @pytest.mark.slow
    def test_every_small_monoid_within_time(self):
        """Test K₀ of every corpus monoid of order ≤ 6 takes under 30 seconds in total"""
        start = time.monotonic()

        groups = [k0(complete(table)) for table in MONOIDS]

        assert time.monotonic() - start < 30
        assert [g.order for g, table in zip(groups, MONOIDS) if table[0] == "Z/6"] == [6]

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_composition_ignores_representatives(self, data):
        """Test composing any triples lands in the class of composing their representatives"""
        completion = completed(data.draw(st.sampled_from(MONOIDS), label="monoid"))
        D, p = completion.base, completion.base_structure
        triples = sorted(completion.classes, key=repr)
        first = data.draw(st.sampled_from(triples), label="first")
        second = data.draw(st.sampled_from([t for t in triples if t.source == first.target]), label="second")

        composed = completion.canonical(compose_triples(D, p, second, first))
        by_representatives = completion.category.compose(completion.canonical(second), completion.canonical(first))

        assert composed == by_representatives

    def test_structure_on_other_category(self, z2_monoid, z3_monoid):
        with pytest.raises(StructuralError):
            group_complete(z3_monoid.category, z2_monoid)

    def test_groupoid_base(self):
        """Test the Z/2 group as a one-object groupoid completes to a trivial K₀"""
        p = corpus.z2_group_permutative()

        completion = group_complete(p.category, p)

        assert completion.certified
        assert k0(completion).order == 1


class TestInclusion:
    """Test cases for the inclusion D → D⁻¹D"""

    @pytest.mark.parametrize("table", MONOIDS, ids=lambda t: t[0])
    def test_lax_map_with_invertible_lambda(self, table):
        functor, mapping, report = inclusion(complete(table))

        assert report.ok, report.render()
        assert report.passed("lambda.invertible")
        assert mapping.kind == "lax"

    @pytest.mark.parametrize("table", MONOIDS, ids=lambda t: t[0])
    def test_injective_iff_cancellative(self, table):
        _, elements, op, _ = table

        assert inclusion_injective_on_pi0(complete(table)) == is_cancellative(elements, op)

    def test_truncated_is_not_cancellative(self):
        _, elements, op, _ = corpus.truncated_table(3)

        assert not is_cancellative(elements, op)


class TestValidateGroup:
    """Test cases for validate_group"""

    def test_broken_table(self):
        g = AbelianGroupPresentation(2, [[0, 1], [1, 1]])

        report = validate_group(g)

        assert report.failed("group.inverse")
        assert report.passed("group.commutative")

    def test_document(self):
        g = grothendieck_group_oracle(*corpus.cyclic_table(2)[1:])

        assert g.to_document()["order"] == 2
