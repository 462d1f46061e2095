import pytest
from hypothesis import given, strategies as st

from dp2count import counting
from dp2count.counting import (InvalidFieldSizeError, OddPrimePower,
                               count_by_trace, evaluate_class_count,
                               existence_exceptions, odd_prime_powers,
                               surface_point_count)
from dp2count.tables import POSSIBLE_TRACES

SWEEP = odd_prime_powers(1000)


def test_parse_accepts_odd_prime_powers():
    assert OddPrimePower.parse(3) == OddPrimePower(3, 3, 1)
    assert OddPrimePower.parse(9) == OddPrimePower(9, 3, 2)
    assert OddPrimePower.parse(125) == OddPrimePower(125, 5, 3)


@pytest.mark.parametrize("q", [0, 1, 2, 4, 8, 15, 21, 100])
def test_parse_rejects_invalid_sizes(q):
    with pytest.raises(InvalidFieldSizeError):
        OddPrimePower.parse(q)


def test_odd_prime_power_sweep():
    assert SWEEP[:8] == [3, 5, 7, 9, 11, 13, 17, 19]
    assert 2 not in SWEEP and 4 not in SWEEP and 15 not in SWEEP


def test_spot_counts():
    assert evaluate_class_count("1A", 9) == 240
    assert evaluate_class_count("-7A", 3) == 756
    assert count_by_trace(-4, 5) == 15120


def test_point_counts():
    assert surface_point_count(8, 9) == 154
    assert surface_point_count(-6, 9) == 28
    assert surface_point_count(0, 11) == 122


@given(st.sampled_from(POSSIBLE_TRACES), st.sampled_from(SWEEP))
def test_trace_symmetry_about_one(a, q):
    if 2 - a in POSSIBLE_TRACES:
        assert count_by_trace(a, q) == count_by_trace(2 - a, q)


@given(st.sampled_from(POSSIBLE_TRACES), st.sampled_from(SWEEP[:30]))
def test_counts_nonnegative(a, q):
    assert count_by_trace(a, q) >= 0


def test_existence_exceptions_small_fields():
    e3 = existence_exceptions(3)
    assert "1A" in e3["class_exceptions"] and "-2B" in e3["class_exceptions"]
    assert e3["trace_exceptions"] == [-6, -4, 6, 8]
    e7 = existence_exceptions(7)
    assert e7["class_exceptions"] == ["1A", "-1A"]
    assert e7["trace_exceptions"] == [-6, 8]
    e9 = existence_exceptions(9)
    assert e9["class_exceptions"] == [] and e9["trace_exceptions"] == []


def test_aggregation_identity(group):
    report = counting.aggregation_check(group, q_sweep=[3, 5, 7, 9, 11])
    assert report["all_pass"]
    assert len(report["rows"]) == len(POSSIBLE_TRACES)
    for row in report["rows"]:
        assert row["polynomial_identity"] and row["sweep_pass"]
        assert sum(c["size"] for c in row["contributors"]) > 0
