"""
Unit tests for bounds and report modules
"""

from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from catforge.bounds import (
    ENV_BOUNDS,
    MultiBounds,
    Window,
    WindowBudget,
    bounded_product,
    bounds_from_env,
    describe,
    parse_bounds,
    sample_product,
    spread,
)
from catforge.errors import BoundsError
from catforge.report import ValidationReport


class TestParseBounds:
    """Test cases for parse_bounds and bounds_from_env"""

    def test_parse(self):
        assert parse_bounds("seq=2, summands=1,arity=3") == {"seq": 2, "summands": 1, "arity": 3}

    def test_empty_parts(self):
        assert parse_bounds("seq=2,,") == {"seq": 2}

    def test_missing_equals(self):
        with pytest.raises(BoundsError, match="expected key=value"):
            parse_bounds("seq")

    def test_not_an_integer(self):
        with pytest.raises(BoundsError, match="not an integer"):
            parse_bounds("seq=two")

    def test_from_env(self, monkeypatch):
        monkeypatch.setenv(ENV_BOUNDS, "sample=5")

        assert bounds_from_env() == {"sample": 5}

    def test_unset_env(self):
        assert bounds_from_env() == {}


class TestWindows:
    """Test cases for the bound dataclasses"""

    def test_negative_window(self):
        with pytest.raises(BoundsError):
            Window(seq=-1)

    def test_negative_arity(self):
        with pytest.raises(BoundsError):
            MultiBounds(arity=-1)

    def test_unbounded_sample(self):
        assert Window(sample=None).as_bounds()["sample"] == "all"

    def test_exhaustive_by_default(self):
        assert Window().sample is None
        assert Window().as_bounds() == {"seq": 3, "summands": 3, "sample": "all"}

    def test_non_positive_sample(self):
        with pytest.raises(BoundsError, match="positive"):
            Window(sample=0)

    def test_fits(self):
        window = Window(seq=2, summands=1)

        assert window.fits((2, 1))
        assert not window.fits((3, 0))
        assert not window.fits((0, 2))

    def test_describe(self):
        assert describe(MultiBounds()) == {"arity": 3, "functors": 64, "sample": 400}


class TestWindowBudget:
    """Test cases for WindowBudget and bounded_product"""

    @staticmethod
    def measure(word):
        return len(word), word.count("+")

    def test_footprint_adds_up(self):
        budget = WindowBudget(Window(seq=4, summands=1), self.measure)

        assert budget.footprint(["ab", "+"]) == (3, 1)
        assert budget.fits(["ab", "+"])
        assert not budget.fits(["+", "+"])

    def test_restrict(self):
        budget = WindowBudget(Window(seq=2, summands=0), self.measure)

        assert budget.restrict(["", "a", "ab", "abc", "+"]) == ["", "a", "ab"]

    def test_chained_measures_pairs(self):
        budget = WindowBudget(Window(seq=3, summands=1), self.measure).chained()

        assert budget.measure(("a", "b+")) == (3, 1)
        assert not budget.fits([("a", "b"), ("cd", "")])

    def test_empty_pool(self):
        assert list(bounded_product([["a"], []], self.measure, Window())) == []

    def test_no_pools(self):
        assert list(bounded_product([], self.measure, Window(seq=0, summands=0))) == [()]

    @given(
        st.lists(st.lists(st.text("a+", max_size=3), max_size=4), min_size=1, max_size=3),
        st.integers(0, 5),
        st.integers(0, 2),
    )
    def test_agrees_with_filtered_product(self, pools, seq, summands):
        """Test pruning keeps exactly the tuples whose total footprint fits"""
        window = Window(seq=seq, summands=summands)
        budget = WindowBudget(window, self.measure)
        expected = [t for t in product(*pools) if budget.fits(t)]

        found = list(bounded_product(pools, self.measure, window))

        assert sorted(found) == sorted(expected)


class TestSampling:
    """Test cases for sample_product and spread"""

    def test_small_product_is_exhaustive(self):
        assert list(sample_product([[1, 2], "ab"], 10)) == [(1, "a"), (1, "b"), (2, "a"), (2, "b")]

    def test_sample_is_deterministic(self):
        pools = [range(7), range(5), range(3)]

        assert list(sample_product(pools, 20)) == list(sample_product(pools, 20))

    @given(st.lists(st.integers(1, 6), min_size=1, max_size=4), st.integers(1, 30))
    def test_sample_is_distinct(self, sizes, cap):
        """Test the sample never repeats an element of the product"""
        pools = [list(range(n)) for n in sizes]

        items = list(sample_product(pools, cap))

        assert len(items) == len(set(items))
        assert all(all(0 <= v < n for v, n in zip(item, sizes)) for item in items)

    def test_spread(self):
        assert spread(list(range(10)), 5) == [0, 2, 4, 6, 8]
        assert spread([1, 2], 5) == [1, 2]
        assert spread([1, 2], None) == [1, 2]


class TestValidationReport:
    """Test cases for ValidationReport"""

    def test_lines(self):
        report = ValidationReport("subject", {"seq": 2})
        report.check("a", True)
        report.check("b", False, ("x",), "broken")
        report.skip("a", 2)

        assert report.lines() == [
            "# subject",
            "# bounds seq=2",
            "CHECK a PASS 1 skipped=2",
            "CHECK b FAIL 1/1 (x): broken",
        ]
        assert not report.ok
        assert report.failed_checks() == ["b"]

    def test_passed_needs_an_instance(self):
        report = ValidationReport("subject")
        report.skip("a")

        assert not report.passed("a")
        assert report.ok

    def test_merge_with_prefix(self):
        inner = ValidationReport("inner", {"cap": 2})
        inner.check("x", False, "i")
        inner.note("truncated")
        outer = ValidationReport("outer")

        outer.merge(inner, prefix="S.")

        assert outer.failed("S.x")
        assert outer.bounds == {"cap": 2}
        assert outer.notes == ["truncated"]
        assert outer.failures("S.x")[0].instance == ("i",)
