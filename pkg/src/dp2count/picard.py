"""The Picard lattice of a degree-2 Del Pezzo surface.

Pic = Z L + Z E1 + ... + Z E7 with the intersection form
diag(1, -1, ..., -1).  Vectors are plain 8-tuples of Python ints
(coefficient of L first), so all arithmetic is arbitrary precision.

The canonical class is K = -3L + E1 + ... + E7; the 126 roots are the
(-2)-classes orthogonal to K and form an E7 root system.
"""

from __future__ import annotations

from itertools import combinations

PicVector = tuple  # 8-tuple of ints: (L, E1, ..., E7)

L: PicVector = (1, 0, 0, 0, 0, 0, 0, 0)
E = [None] + [tuple(1 if j == i else 0 for j in range(8)) for i in range(1, 8)]
K: PicVector = (-3, 1, 1, 1, 1, 1, 1, 1)

# intersection form: L.L = 1, Ei.Ei = -1, mixed = 0
_SIGNS = (1, -1, -1, -1, -1, -1, -1, -1)


def inner(u: PicVector, v: PicVector) -> int:
    """Intersection pairing of two Picard classes."""
    return sum(s * a * b for s, a, b in zip(_SIGNS, u, v))


def add(u: PicVector, v: PicVector) -> PicVector:
    return tuple(a + b for a, b in zip(u, v))


def neg(u: PicVector) -> PicVector:
    return tuple(-a for a in u)


def scale(c: int, u: PicVector) -> PicVector:
    return tuple(c * a for a in u)


def positive_roots() -> list[PicVector]:
    """The 63 positive roots, in the three standard families.

    Ei - Ej (i < j), L - Ei - Ej - Ek (i < j < k), and
    2L - E1 - ... - E7 + Ei.
    """
    out = []
    for i, j in combinations(range(1, 8), 2):
        v = [0] * 8
        v[i], v[j] = 1, -1
        out.append(tuple(v))
    for i, j, k in combinations(range(1, 8), 3):
        v = [1, 0, 0, 0, 0, 0, 0, 0]
        v[i] = v[j] = v[k] = -1
        out.append(tuple(v))
    for i in range(1, 8):
        v = [2, -1, -1, -1, -1, -1, -1, -1]
        v[i] += 1
        out.append(tuple(v))
    return out


def roots() -> list[PicVector]:
    """All 126 roots: the positive roots and their negatives, sorted.

    Sorted by coefficient tuple so the indexing used throughout the
    group machinery is reproducible.
    """
    pos = positive_roots()
    return sorted(pos + [neg(r) for r in pos])


# simple roots: E1-E2, ..., E6-E7, L-E1-E2-E3
SIMPLE_ROOTS: list[PicVector] = [
    tuple(1 if j == i else (-1 if j == i + 1 else 0) for j in range(8))
    for i in range(1, 7)
] + [(1, -1, -1, -1, 0, 0, 0, 0)]


def reflect(r: PicVector, v: PicVector) -> PicVector:
    """Reflection of v in the root r: v + (v.r) r.

    Involutive, preserves the intersection form and fixes K.
    """
    if inner(r, r) != -2:
        raise ValueError(f"not a root (self-intersection {inner(r, r)}, expected -2): {r}")
    return add(v, scale(inner(v, r), r))


def reflection_matrix(r: PicVector) -> list[list[int]]:
    """8x8 integer matrix (row-major) of the reflection in root r,
    acting on column coordinate vectors."""
    basis = [tuple(1 if j == i else 0 for j in range(8)) for i in range(8)]
    cols = [reflect(r, b) for b in basis]
    return [[cols[j][i] for j in range(8)] for i in range(8)]
