import itertools
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from staircase.enumeration import (
    CapExceeded,
    ab_tableaux,
    enumerate_ab,
    enumerate_full,
    exact_event_probability,
    expand_symbols,
    falling,
    partition_ab_closed,
    partition_function,
    partition_product,
    rising,
    weight_polynomial,
)
from staircase.measure import MeasureParams
from staircase.tableau import A, Tableau, validate

rationals = st.fractions(min_value=F(1, 20), max_value=20, max_denominator=30)


def _naive(n, alphabet):
    boxes = [(i, j) for i in range(1, n + 1) for j in range(1, n + 2 - i)]
    out = []
    for choice in itertools.product("." + alphabet, repeat=len(boxes)):
        t = Tableau.from_cells(n, {b: s for b, s in zip(boxes, choice) if s != "."})
        if not validate(t):
            out.append(t)
    return out


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_ab_matches_filter_all_assignments(n):
    assert sorted(enumerate_ab(n), key=lambda t: t.dumps()) == sorted(_naive(n, "AB"), key=lambda t: t.dumps())


@pytest.mark.parametrize("n", [1, 2, 3])
def test_full_matches_filter_all_assignments(n):
    got = list(enumerate_full(n))
    assert len(got) == len(set(got))
    assert set(got) == set(_naive(n, "ABGD"))


@pytest.mark.parametrize("n, count", [(1, 2), (2, 6), (3, 24), (4, 120), (5, 720), (6, 5040)])
def test_ab_counts(n, count):
    assert sum(1 for _ in enumerate_ab(n)) == count == math.factorial(n + 1)


@pytest.mark.parametrize("n, count", [(1, 4), (2, 32)])
def test_full_counts(n, count):
    assert sum(1 for _ in enumerate_full(n)) == count


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_full_count_is_expansion_count(n):
    assert sum(1 for _ in enumerate_full(n)) == sum(2 ** sum(t.counts.values()) for t in enumerate_ab(n))
    expanded = {u for t in enumerate_ab(n) for u in expand_symbols(t)}
    assert expanded == set(enumerate_full(n))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_canonical_order(n):
    first = [t.dumps() for t in enumerate_ab(n)]
    assert first == [t.dumps() for t in enumerate_ab(n)]
    assert first == sorted(first)
    if n <= 3:
        full = [t.dumps() for t in enumerate_full(n)]
        assert full == sorted(full)


def test_caps():
    with pytest.raises(CapExceeded):
        enumerate_ab(10)
    with pytest.raises(CapExceeded):
        enumerate_full(7)
    with pytest.raises(CapExceeded):
        enumerate_ab(3, cap=2)


def test_cap_env_override(monkeypatch):
    monkeypatch.setenv("STAIRCASE_MAX_N", "2")
    with pytest.raises(CapExceeded):
        enumerate_ab(3)


def test_factorials():
    assert rising(F(5, 6), 2) == F(5, 6) * F(11, 6)
    assert rising(3, 0) == 1 == falling(3, 0)
    assert falling(5, 3) == 60
    assert falling(2, 3) == 0


class TestPartitionFunction:
    def test_single_box(self):
        assert partition_function(1, 1, 1, 1, 1) == (4, 4)

    def test_two_three(self):
        assert partition_function(2, 2, 3) == (55, 55)
        assert partition_ab_closed(2, 2, 3) == 55

    def test_all_ones_size_two(self):
        assert partition_product(2, 1, 1, 1, 1) == 32

    @given(rationals, rationals, rationals, rationals)
    def test_merge_identity(self, al, be, ga, de):
        for n in range(1, 6):
            assert partition_product(n, al, be, ga, de) == partition_product(n, al + ga, be + de)

    @given(rationals, rationals, rationals, rationals)
    def test_enumeration_equals_product(self, al, be, ga, de):
        for n in range(1, 5):
            enumerated, product = partition_function(n, al, be, ga, de)
            assert enumerated == product

    @given(rationals, rationals)
    def test_ab_closed_form(self, al, be):
        for n in range(1, 7):
            total = sum((k * m.evaluate(al, be) for m, k in weight_polynomial(n, full=False).items()), F(0))
            assert total == partition_ab_closed(n, al, be)

    def test_past_cap_product_only(self):
        enumerated, product = partition_function(9, 1, 1)
        assert enumerated is None and product == math.factorial(10)


class TestEventProbability:
    def test_certain_event(self):
        assert exact_event_probability(4, (1, 1), lambda t: True) == 1

    def test_inner_box(self):
        assert exact_event_probability(3, (1, 1), lambda t: t[2, 1] is A) == F(1, 12)

    def test_diagonal_box(self):
        assert exact_event_probability(2, (1, 1), lambda t: t[1, 2] is A) == F(2, 3)

    def test_max_symbols_normalized(self):
        assert exact_event_probability(4, MeasureParams(0, 0, True), lambda t: True) == 1


def test_cached_materialization_matches_stream():
    assert ab_tableaux(5) == tuple(enumerate_ab(5))
