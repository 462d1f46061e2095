import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dp2count.gf import GF, is_prime, make_field, smallest_irreducible

F9 = make_field(3, 2)
F27 = make_field(3, 3)
F25 = make_field(5, 2)
FIELDS = [F9, F27, F25]


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_smallest_irreducible_is_deterministic():
    assert smallest_irreducible(3, 1) == (0, 1)
    assert smallest_irreducible(3, 2) == smallest_irreducible(3, 2)
    f = smallest_irreducible(5, 3)
    assert len(f) == 4 and f[-1] == 1


def test_rejects_even_characteristic_and_bad_degree():
    with pytest.raises(ValueError):
        GF(2, 3)
    with pytest.raises(ValueError):
        GF(3, 0)
    with pytest.raises(ValueError):
        GF(3, 20)  # order exceeds the table budget


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: repr(F))
def test_generator_has_full_order(F):
    n1 = F.order - 1
    seen = {1}
    x = 1
    for _ in range(n1 - 1):
        x = F.mul(x, F.generator)
        seen.add(x)
    assert len(seen) == n1 and 0 not in seen


@given(st.data())
@settings(max_examples=200)
def test_field_axioms(data):
    F = data.draw(st.sampled_from(FIELDS))
    elt = st.integers(min_value=0, max_value=F.order - 1)
    a, b, c = data.draw(elt), data.draw(elt), data.draw(elt)
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.negate(a)) == 0
    if a != 0:
        assert F.mul(a, F.inv(a)) == 1


@given(st.data())
@settings(max_examples=200)
def test_frobenius_is_a_field_automorphism(data):
    F = data.draw(st.sampled_from(FIELDS))
    elt = st.integers(min_value=0, max_value=F.order - 1)
    a, b = data.draw(elt), data.draw(elt)
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
    assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
    assert F.frobenius(a, times=F.k) == a
    assert F.frobenius(a) == F.pow(a, F.p)


@pytest.mark.parametrize("F,d", [(F9, 1), (F27, 1), (F25, 1), (F27, 3)])
def test_subfield_fixed_points(F, d):
    fixed = F.subfield_fixed(d)
    assert len(fixed) == F.p ** d
    for a in fixed[:10]:
        assert F.frobenius(int(a), times=d) == a


def test_prime_subfield_is_integers_mod_p():
    # base-p digit encoding puts F_p at 0..p-1 with ordinary mod-p arithmetic
    F = F27
    for a in range(3):
        for b in range(3):
            assert F.add(a, b) == (a + b) % 3
            assert F.mul(a, b) == (a * b) % 3


def test_tables_match_scalar_ops():
    F = F9
    n = F.order
    for a in range(n):
        assert F.add(a, F.neg_t[a]) == 0
        if a:
            assert int(F.mul_t[a, F.inv_t[a]]) == 1
    assert np.array_equal(F.mul_t[0, :], np.zeros(n, dtype=F.mul_t.dtype))
