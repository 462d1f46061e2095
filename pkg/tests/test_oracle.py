import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from dp2count import oracle
from dp2count.gf import make_field
from dp2count.oracle import (BudgetExceededError, _det6_v, _det_scalar,
                             _subset_orbit_reps, _veronese_scalar, collinear,
                             count_identity, count_twisted, feasibility,
                             in_general_position, pgl3_order, six_on_conic)
from dp2count.weyl import cycle_type_permutation

F3 = make_field(3, 1)
F7 = make_field(7, 1)
F9 = make_field(3, 2)


def test_pgl3_order_and_feasibility():
    assert pgl3_order(3) == 5616
    assert pgl3_order(5) == 372000
    assert feasibility((1,) * 7, 3) == 13 ** 7
    assert feasibility((2, 2, 1, 1, 1), 3) == 91 * 91 * 13 ** 3


def test_collinear_spot():
    assert collinear(F3, (1, 0, 0), (0, 1, 0), (1, 1, 0))
    assert not collinear(F3, (1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_six_on_conic_spot():
    # xz = y^2 passes through (1, t, t^2) and (0, 0, 1)
    on = [(1, t, F7.mul(t, t)) for t in range(5)] + [(0, 0, 1)]
    assert six_on_conic(F7, on)
    off = on[:5] + [(1, 1, 2)]
    assert not six_on_conic(F7, off)


def _pt(draw, F):
    elt = st.integers(min_value=0, max_value=F.order - 1)
    P = (draw(elt), draw(elt), draw(elt))
    assume(P != (0, 0, 0))
    return P


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_general_position_is_projective_and_symmetric(data):
    F = F7
    pts = [_pt(data.draw, F) for _ in range(7)]
    base = in_general_position(F, pts)

    # invariant under permuting the points
    perm = data.draw(st.permutations(range(7)))
    assert in_general_position(F, [pts[i] for i in perm]) == base

    # invariant under any projective transformation
    elt = st.integers(min_value=0, max_value=F.order - 1)
    M = [[data.draw(elt) for _ in range(3)] for _ in range(3)]
    assume(_det_scalar(F, M) != 0)

    def apply(P):
        return tuple(
            F.add(F.add(F.mul(M[i][0], P[0]), F.mul(M[i][1], P[1])), F.mul(M[i][2], P[2]))
            for i in range(3))

    assert in_general_position(F, [apply(P) for P in pts]) == base


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_vectorized_det6_matches_scalar(data):
    F = F9
    elt = st.integers(min_value=0, max_value=F.order - 1)
    m = [[data.draw(elt) for _ in range(6)] for _ in range(6)]
    rows = [tuple(np.array([v], dtype=np.int64) for v in r) for r in m]
    vec = int(_det6_v(F, rows)[0])
    assert vec == _det_scalar(F, m)


def test_veronese_matches_conic_membership():
    pts = [(1, 2, 4), (0, 1, 3), (1, 0, 0), (0, 0, 1), (1, 1, 1), (1, 3, 2)]
    rows = [_veronese_scalar(F7, P) for P in pts]
    assert six_on_conic(F7, pts) == (_det_scalar(F7, rows) == 0)


def test_subset_orbit_reps_identity_twist():
    sigma = cycle_type_permutation((1,) * 7)
    assert len(_subset_orbit_reps(sigma, 2)) == 21
    assert len(_subset_orbit_reps(sigma, 3)) == 35


def test_subset_orbit_reps_seven_cycle():
    sigma = cycle_type_permutation((7,))
    assert len(_subset_orbit_reps(sigma, 2)) == 3
    assert len(_subset_orbit_reps(sigma, 3)) == 5
    assert len(_subset_orbit_reps(sigma, 1)) == 1


def test_identity_counts_tiny_fields():
    assert count_identity(3) == 0
    assert count_identity(5) == 0
    assert count_identity(7) == 0


def test_budget_enforced():
    with pytest.raises(BudgetExceededError):
        count_identity(101, budget=10)
    with pytest.raises(BudgetExceededError):
        count_twisted((7,), 5)  # feasibility ~6.1e9


def test_twisted_identity_cycle_type_agrees_with_frame_count(group):
    # same moduli counted through the generic twisted path
    res = count_twisted((1,) * 7, 3, budget=10 ** 8, group=group)
    assert res.class_name == "1A"
    assert res.orbit_count == count_identity(3)
    assert res.raw_count % pgl3_order(3) == 0


def test_double_transposition_count_vanishes_at_three(group):
    # independent confirmation that the (q - 3) factor in the 2C row is real
    res = count_twisted((2, 2, 1, 1, 1), 3, group=group)
    assert res.class_name == "2C"
    assert res.orbit_count == 0
