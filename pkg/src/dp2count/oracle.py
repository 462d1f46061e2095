"""Brute-force verification of the class counting polynomials.

Counts 7-tuples of points in the projective plane in general position
(no three collinear, no six on a conic) with a prescribed Frobenius
twisting, and normalizes by the PGL3(F_q) action:

  * count_identity(q): the Frobenius fixes each point, so PGL3 is
    quotiented out directly by pinning the first four points to the
    standard frame (PGL3 is simply transitive on frames).

  * count_twisted(cycle_type, q): the Frobenius permutes the points by a
    permutation of the given cycle type.  One point is enumerated per
    cycle, over the subfield of the big field F_{q^lcm} fixed by
    Frobenius^length; its cycle is filled in by repeated Frobenius.  The
    PGL3(F_q) action on twisted general-position tuples is free (every
    tuple contains a frame), so the raw total must be divisible by
    |PGL3(F_q)| and the quotient is the orbit count.

Because the tuples are Frobenius-twisted by construction, the Frobenius
maps a degenerate subset (equal pair / collinear triple / coconic six)
to another one; it therefore suffices to test one representative per
orbit of the twisting permutation on subsets, which is what makes the
big-field searches affordable.

All arithmetic runs over the dp2count.gf tables, vectorized in chunks.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import lcm, prod
from time import perf_counter

import numpy as np

from . import weyl
from .counting import OddPrimePower
from .gf import GF, make_field

DEFAULT_BUDGET = 20_000_000
_CHUNK = 1 << 20


class BudgetExceededError(RuntimeError):
    pass


def pgl3_order(q: int) -> int:
    return q ** 3 * (q ** 3 - 1) * (q ** 2 - 1)


def feasibility(cycle_type: tuple[int, ...], q: int) -> int:
    """Raw search size: product over cycles of |P^2(F_{q^l})|."""
    return prod(q ** (2 * l) + q ** l + 1 for l in cycle_type)


# -- scalar predicates (small fields; property tests and spot checks) --

def collinear(F: GF, P, Q, R) -> bool:
    return _det_scalar(F, [list(P), list(Q), list(R)]) == 0


def _veronese_scalar(F: GF, P):
    x, y, z = P
    return [F.mul(x, x), F.mul(y, y), F.mul(z, z),
            F.mul(x, y), F.mul(x, z), F.mul(y, z)]


def six_on_conic(F: GF, points) -> bool:
    """True iff some nonzero conic passes through all six points."""
    if len(points) != 6:
        raise ValueError("exactly six points required")
    return _det_scalar(F, [_veronese_scalar(F, P) for P in points]) == 0


def in_general_position(F: GF, points) -> bool:
    """Pairwise distinct, no three collinear, no six on a conic."""
    if len(points) != 7:
        raise ValueError("exactly seven points required")
    pts = [tuple(P) for P in points]
    if len(set(pts)) != 7:
        return False
    for T in combinations(pts, 3):
        if collinear(F, *T):
            return False
    for S in combinations(pts, 6):
        if six_on_conic(F, S):
            return False
    return True


def _det_scalar(F: GF, rows) -> int:
    """Exact determinant of a small square matrix over F, by elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    det = 1
    for j in range(n):
        piv = next((i for i in range(j, n) if m[i][j] != 0), None)
        if piv is None:
            return 0
        if piv != j:
            m[j], m[piv] = m[piv], m[j]
            det = F.negate(det)
        det = F.mul(det, m[j][j])
        inv = F.inv(m[j][j])
        for i in range(j + 1, n):
            if m[i][j]:
                c = F.mul(m[i][j], inv)
                for jj in range(j, n):
                    m[i][jj] = F.sub(m[i][jj], F.mul(c, m[j][jj]))
    return det


# -- vectorized field helpers; coordinates are arrays of element indices --

def _mul(F, a, b):
    return F.mul_t[a, b]


def _add(F, a, b):
    return F.add_t[a, b]


def _sub(F, a, b):
    return F.add_t[a, F.neg_t[b]]


def _det3_v(F, P, Q, R):
    (x1, y1, z1), (x2, y2, z2), (x3, y3, z3) = P, Q, R
    m1 = _sub(F, _mul(F, y2, z3), _mul(F, z2, y3))
    m2 = _sub(F, _mul(F, x2, z3), _mul(F, z2, x3))
    m3 = _sub(F, _mul(F, x2, y3), _mul(F, y2, x3))
    return _add(F, _sub(F, _mul(F, x1, m1), _mul(F, y1, m2)), _mul(F, z1, m3))


def _veronese_v(F, P):
    x, y, z = P
    return (_mul(F, x, x), _mul(F, y, y), _mul(F, z, z),
            _mul(F, x, y), _mul(F, x, z), _mul(F, y, z))


_LAPLACE_33 = []
for _S in combinations(range(6), 3):
    _Sc = tuple(j for j in range(6) if j not in _S)
    _LAPLACE_33.append((_S, _Sc, (-1) ** (3 + sum(_S))))


def _det6_v(F, rows):
    """Determinant of a 6x6 matrix whose entries are parallel arrays,
    via Laplace expansion along the first three rows."""
    top, bot = rows[:3], rows[3:]
    total = None
    for S, Sc, sign in _LAPLACE_33:
        a = _det3_v(F, *[tuple(row[j] for j in S) for row in top])
        b = _det3_v(F, *[tuple(row[j] for j in Sc) for row in bot])
        term = _mul(F, a, b)
        if sign < 0:
            term = F.neg_t[term]
        total = term if total is None else _add(F, total, term)
    return total


def _conic_coeffs_scalar(F: GF, points5):
    """Coefficients of the conic(s) through 5 points, as the 6 signed 5x5
    minors of the 5x6 Veronese matrix.  All-zero means the conic is not
    unique (then every sixth point completes a coconic six)."""
    m = [_veronese_scalar(F, P) for P in points5]
    coeffs = []
    for j in range(6):
        sub = [[row[jj] for jj in range(6) if jj != j] for row in m]
        c = _det_scalar(F, sub)
        if j % 2 == 1:
            c = F.negate(c)
        coeffs.append(c)
    return coeffs


def _eval_conic_v(F, coeffs, P):
    v = _veronese_v(F, P)
    total = None
    for c, comp in zip(coeffs, v):
        term = F.mul_t[c][comp]
        total = term if total is None else _add(F, total, term)
    return total


def _p2_points(F: GF, elements: np.ndarray):
    """Canonical points of P^2 with coordinates in the given element set
    (first nonzero coordinate normalized to 1), enumerated reproducibly:
    (0,0,1), then (0,1,s), then (1,s,t) in lexicographic element order."""
    elements = np.sort(np.asarray(elements, dtype=np.int32))
    one = np.int32(1)
    n = len(elements)
    xs = [np.zeros(1, np.int32), np.zeros(n, np.int32), np.repeat(one, n * n)]
    ys = [np.zeros(1, np.int32), np.full(n, one, np.int32), np.repeat(elements, n)]
    zs = [np.full(1, one, np.int32), elements.astype(np.int32), np.tile(elements, n)]
    return (np.concatenate(xs), np.concatenate(ys), np.concatenate(zs))


# -- identity counting, frame-normalized --

@dataclass
class OracleResult:
    cycle_type: tuple
    q: int
    class_name: str
    raw_count: int
    pgl3_order: int
    orbit_count: int
    search_size: int
    wall_time: float

    def to_dict(self) -> dict:
        return {
            "cycle_type": list(self.cycle_type),
            "q": self.q,
            "class_name": self.class_name,
            "raw_count": self.raw_count,
            "pgl3_order": self.pgl3_order,
            "orbit_count": self.orbit_count,
            "search_size": self.search_size,
            "wall_time": round(self.wall_time, 3),
        }


def count_identity(q: int, budget: int = DEFAULT_BUDGET) -> int:
    """PGL3(F_q)-orbits of ordered 7-tuples of F_q-points in general
    position, counted with P1..P4 pinned to the standard frame."""
    opp = OddPrimePower.parse(q)
    size = (q * q + q + 1) ** 3
    if size > budget:
        raise BudgetExceededError(
            f"identity search at q={q} needs {size} frame-normalized triples, over budget {budget}")
    F = make_field(opp.p, opp.k)
    pts = _p2_points(F, np.arange(F.order))
    one = 1
    frame = [(one, 0, 0), (0, one, 0), (0, 0, one), (one, one, one)]

    def line_mask(A, B):
        a = (np.int32(A[0]), np.int32(A[1]), np.int32(A[2]))
        b = (np.int32(B[0]), np.int32(B[1]), np.int32(B[2]))
        return _det3_v(F, a, b, pts) != 0

    base = np.ones(len(pts[0]), dtype=bool)
    for A, B in combinations(frame, 2):
        base &= line_mask(A, B)
    cand = np.nonzero(base)[0]

    def at(i):
        return (int(pts[0][i]), int(pts[1][i]), int(pts[2][i]))

    count = 0
    for i5 in cand:
        P5 = at(i5)
        m6 = base.copy()
        for Fj in frame:
            m6 &= line_mask(P5, Fj)
        conic5 = _conic_coeffs_scalar(F, frame + [P5])
        m6 &= _eval_conic_v(F, conic5, pts) != 0
        for i6 in np.nonzero(m6)[0]:
            P6 = at(i6)
            m7 = m6.copy()
            m7 &= line_mask(P5, P6)
            for Fj in frame:
                m7 &= line_mask(P6, Fj)
            # six-point subsets containing P7: each omits one of the six
            # placed points; omitting P6 gives the frame+P5 conic already
            # folded into m6, and {frame, P5, P6} itself was checked there
            placed = frame + [P5, P6]
            for omit in range(5):
                subset = [p for i, p in enumerate(placed) if i != omit]
                coeffs = _conic_coeffs_scalar(F, subset)
                m7 &= _eval_conic_v(F, coeffs, pts) != 0
            count += int(m7.sum())
    return count


# -- twisted counting --

def _subset_orbit_reps(sigma: dict, k: int) -> list[tuple]:
    """Lexicographically smallest representative of each orbit of the
    twisting permutation acting on k-subsets of {1..7}."""
    seen = set()
    reps = []
    for S in combinations(range(1, 8), k):
        if S in seen:
            continue
        reps.append(S)
        T = S
        while True:
            T = tuple(sorted(sigma[i] for i in T))
            if T == S:
                break
            seen.add(T)
    return reps


def count_twisted(cycle_type, q: int, budget: int = DEFAULT_BUDGET,
                  group: weyl.GroupData | None = None,
                  chunk: int = _CHUNK) -> OracleResult:
    """Count Frobenius-twisted general-position 7-tuples for the given
    cycle type, normalized by PGL3(F_q); identifies which conjugacy class
    the permutation embedding lands on."""
    t0 = perf_counter()
    opp = OddPrimePower.parse(q)
    cycle_type = tuple(sorted((int(c) for c in cycle_type), reverse=True))
    size = feasibility(cycle_type, q)
    if size > budget:
        raise BudgetExceededError(
            f"twisted search {cycle_type} at q={q} needs {size} raw tuples, over budget {budget}")

    sigma = weyl.cycle_type_permutation(cycle_type)
    big_k = opp.k * lcm(*cycle_type)
    F = make_field(opp.p, big_k)

    # Frobenius x -> x^q on the big field, as an index permutation
    frobq = np.arange(F.order, dtype=np.int32)
    for _ in range(opp.k):
        frobq = F.frob_t[frobq]

    # cycle layout: cycle c occupies slots starts[c] .. starts[c]+len-1
    starts = []
    s = 1
    for length in cycle_type:
        starts.append(s)
        s += length

    def stage_of_slot(slot: int) -> int:
        for c in range(len(cycle_type) - 1, -1, -1):
            if slot >= starts[c]:
                return c
        raise AssertionError

    # constraints, one representative per sigma-orbit, scheduled at the
    # first stage where all their slots are placed
    checks_at = {c: {"pairs": [], "triples": [], "conics": []} for c in range(len(cycle_type))}
    for S in _subset_orbit_reps(sigma, 2):
        checks_at[max(stage_of_slot(i) for i in S)]["pairs"].append(S)
    for S in _subset_orbit_reps(sigma, 3):
        checks_at[max(stage_of_slot(i) for i in S)]["triples"].append(S)
    for (omit,) in _subset_orbit_reps(sigma, 1):
        S = tuple(i for i in range(1, 8) if i != omit)
        checks_at[max(stage_of_slot(i) for i in S)]["conics"].append(S)

    # candidate points per cycle: P^2 over the subfield fixed by Frobenius^length
    cycle_pts = []
    for length in cycle_type:
        fixed = F.subfield_fixed(opp.k * length)
        cycle_pts.append(_p2_points(F, fixed))

    def slot_coords(free_by_cycle, slot):
        c = stage_of_slot(slot)
        coords = free_by_cycle[c]
        for _ in range(slot - starts[c]):
            coords = tuple(frobq[a] for a in coords)
        return coords

    # survivors: per placed cycle, arrays of the free point coordinates
    survivors: list[tuple] = []
    n_surv = 1
    for stage, length in enumerate(cycle_type):
        cpts = cycle_pts[stage]
        m = len(cpts[0])
        total = n_surv * m
        kept_parts: list[list[tuple]] = [[] for _ in range(stage + 1)]
        for lo in range(0, total, chunk):
            hi = min(lo + chunk, total)
            flat = np.arange(lo, hi, dtype=np.int64)
            si, ci = flat // m, flat % m
            free = [tuple(a[si] for a in survivors[c]) for c in range(stage)]
            free.append(tuple(a[ci] for a in cpts))
            # memoized Frobenius iterates for this chunk
            cache: dict[int, tuple] = {}

            def coords(slot):
                if slot not in cache:
                    cache[slot] = slot_coords(free, slot)
                return cache[slot]

            mask = np.ones(hi - lo, dtype=bool)
            for S in checks_at[stage]["pairs"]:
                A, B = coords(S[0]), coords(S[1])
                eq = (A[0] == B[0]) & (A[1] == B[1]) & (A[2] == B[2])
                mask &= ~eq
            for S in checks_at[stage]["triples"]:
                d = _det3_v(F, coords(S[0]), coords(S[1]), coords(S[2]))
                mask &= d != 0
                del d
            if checks_at[stage]["conics"] and mask.any():
                keep = np.nonzero(mask)[0]
                sub_cache = {slot: tuple(a[keep] for a in c3) for slot, c3 in cache.items()}

                def coords_kept(slot):
                    if slot not in sub_cache:
                        c = stage_of_slot(slot)
                        cc = tuple(a[keep] for a in free[c])
                        for _ in range(slot - starts[c]):
                            cc = tuple(frobq[a] for a in cc)
                        sub_cache[slot] = cc
                    return sub_cache[slot]

                conic_ok = np.ones(len(keep), dtype=bool)
                for S in checks_at[stage]["conics"]:
                    rows = [_veronese_v(F, coords_kept(i)) for i in S]
                    conic_ok &= _det6_v(F, rows) != 0
                mask[keep[~conic_ok]] = False
            kidx = np.nonzero(mask)[0]
            for c in range(stage + 1):
                kept_parts[c].append(tuple(a[kidx] for a in free[c]))
        # kept_parts[c] is empty when an earlier stage wiped out every candidate
        survivors = [tuple(np.concatenate([part[d] for part in kept_parts[c]])
                           if kept_parts[c] else np.empty(0, dtype=np.int64)
                           for d in range(3)) for c in range(stage + 1)]
        n_surv = len(survivors[0][0])

    raw = n_surv
    order = pgl3_order(q)
    if raw % order != 0:
        raise AssertionError(
            f"raw twisted count {raw} not divisible by |PGL3(F_{q})| = {order}; "
            "freeness violated, this is a bug")
    if group is None:
        group = weyl.build_group()
    name = group.identify_class(weyl.embed_permutation(sigma))
    return OracleResult(
        cycle_type=cycle_type, q=q, class_name=name,
        raw_count=raw, pgl3_order=order, orbit_count=raw // order,
        search_size=size, wall_time=perf_counter() - t0)
