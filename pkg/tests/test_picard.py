import pytest

from dp2count import picard
from dp2count.picard import E, K, L, SIMPLE_ROOTS, inner, reflect, roots, positive_roots


def test_lattice_basics():
    assert inner(L, L) == 1
    for i in range(1, 8):
        assert inner(E[i], E[i]) == -1
        assert inner(L, E[i]) == 0
    assert inner(K, K) == 2


def test_root_counts_and_families():
    pos = positive_roots()
    assert len(pos) == 63
    fam_de = [r for r in pos if r[0] == 0]
    fam_line = [r for r in pos if r[0] == 1]
    fam_conic = [r for r in pos if r[0] == 2]
    assert (len(fam_de), len(fam_line), len(fam_conic)) == (21, 35, 7)
    all_roots = roots()
    assert len(all_roots) == 126
    assert len(set(all_roots)) == 126


def test_roots_have_square_minus_two_and_pair_with_k():
    for r in roots():
        assert inner(r, r) == -2
        assert inner(r, K) == 0


def test_simple_roots_cartan_matrix():
    # E7 Dynkin diagram: chain 1-2-3-4-5-6 with node 7 attached to node 4
    n = len(SIMPLE_ROOTS)
    assert n == 7
    gram = [[inner(SIMPLE_ROOTS[i], SIMPLE_ROOTS[j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        assert gram[i][i] == -2
    edges = {(i, j) for i in range(n) for j in range(n) if i < j and gram[i][j] == 1}
    assert len(edges) == 6
    assert all(v in (0, 1) for i in range(n) for j in range(n) if i != j
               for v in [gram[i][j]])


def test_reflection_involutive_and_isometric():
    rs = roots()
    for r in rs[:10] + rs[60:70]:
        for v in (L, E[1], E[7], K):
            w = reflect(r, v)
            assert reflect(r, w) == v
        assert reflect(r, K) == K
    a, b = rs[3], rs[50]
    assert inner(reflect(a, b), reflect(a, b)) == inner(b, b)


def test_reflect_rejects_non_root():
    with pytest.raises(ValueError):
        reflect(L, E[1])


def test_reflection_matrix_consistent():
    r = SIMPLE_ROOTS[0]
    m = picard.reflection_matrix(r)
    for v in (L, E[1], E[2], K):
        mv = tuple(sum(m[i][j] * v[j] for j in range(8)) for i in range(8))
        assert mv == reflect(r, v)
