import pytest

from dp2count import tables
from dp2count.tables import (CLASS_NAMES, POSSIBLE_TRACES, class_record,
                             trace_record, validate_embedded_data)


def test_validate_embedded_data_passes():
    report = validate_embedded_data()
    assert report["n_checks"] >= 60


def test_class_inventory():
    assert len(CLASS_NAMES) == 30
    assert CLASS_NAMES[0] == "1A"
    assert len(tables.SIGNED_CLASS_NAMES) == 60
    assert list(POSSIBLE_TRACES) == [-6, -4, -3, -2, -1, 0, 1, 2, 3, 4, 5, 6, 8]


def test_signed_and_unsigned_lookup_agree():
    for name in CLASS_NAMES:
        assert class_record(name) is class_record("-" + name)


def test_unknown_class_lists_valid_names():
    with pytest.raises(KeyError) as exc:
        class_record("9Z")
    assert "1A" in str(exc.value)


def test_spot_values():
    assert class_record("1A").count_poly(9) == 240
    assert class_record("7A").count_poly(3) == 756
    assert class_record("2A").count_poly(5) == 240
    assert trace_record(-4).count_poly(5) == 15120


def test_polynomials_monic_degree_six():
    for name in CLASS_NAMES:
        exp = class_record(name).count_poly.expanded
        assert len(exp) == 7 and exp[-1] == 1


def test_duplicate_rows():
    assert class_record("4C").count_poly.expanded == class_record("4E").count_poly.expanded
    assert trace_record(0).count_poly.expanded == trace_record(2).count_poly.expanded
    assert trace_record(-6).count_poly.expanded == class_record("1A").count_poly.expanded
    assert trace_record(8).count_poly.expanded == class_record("1A").count_poly.expanded


def test_trace_rows_symmetric_about_one():
    for a in POSSIBLE_TRACES:
        if 2 - a in POSSIBLE_TRACES:
            assert trace_record(a).count_poly.expanded == trace_record(2 - a).count_poly.expanded
