"""W(E7) as a concrete matrix group on the Picard lattice.

Elements act on the 126 roots, so an element is stored compactly as a
permutation of root indices (a length-126 uint8 array).  Since the roots
span the K-orthogonal complement and every element fixes K, an element
is uniquely determined by the images of the 7 simple roots; packing
those 7 indices base 126 gives an injective 63-bit fingerprint, which is
what the deduplication structures hold.  No hashing heuristics are
involved: equal fingerprints mean equal elements.

The breadth-first closure over the 7 simple reflections and the
conjugation-orbit closures are vectorized with numpy but all data stays
integral and exact.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, replace
from itertools import permutations
from pathlib import Path

import numpy as np
import sympy

from . import picard
from .intpoly import poly_add, poly_eq, poly_scale
from .tables import CLASS_RECORDS, POSSIBLE_TRACES, TRACE_RECORDS

GROUP_ORDER = 2_903_040
SP62_ORDER = 1_451_520
N_ROOTS = 126

ROOTS: list[tuple] = picard.roots()
_ROOT_INDEX: dict[tuple, int] = {r: i for i, r in enumerate(ROOTS)}
_ROOTS_ARR = np.array(ROOTS, dtype=np.int64)  # (126, 8)
_SIMPLE_IDX = np.array([_ROOT_INDEX[r] for r in picard.SIMPLE_ROOTS], dtype=np.int64)
_FP_POWERS = 126 ** np.arange(7, dtype=np.int64)

_FORM = np.diag(np.array([1, -1, -1, -1, -1, -1, -1, -1], dtype=np.int64))
_K = np.array(picard.K, dtype=np.int64)

def _central_neg_matrix() -> np.ndarray:
    # central element: v -> (v.K) K - v  (identity on K, -1 on the roots)
    cols = []
    for c in range(8):
        b = tuple(1 if j == c else 0 for j in range(8))
        img = picard.add(picard.scale(picard.inner(b, picard.K), picard.K), picard.neg(b))
        cols.append(img)
    return np.array(cols, dtype=np.int64).T


CENTRAL_NEG = _central_neg_matrix()
IDENTITY = np.eye(8, dtype=np.int64)


class NotInGroupError(Exception):
    """The given matrix is not an element of W(E7) on this lattice."""


def matrix_to_perm(m: np.ndarray) -> np.ndarray:
    """Root-permutation form of a group element given as an 8x8 matrix."""
    images = _ROOTS_ARR @ m.T
    perm = np.empty(N_ROOTS, dtype=np.uint8)
    for i in range(N_ROOTS):
        key = tuple(int(x) for x in images[i])
        idx = _ROOT_INDEX.get(key)
        if idx is None:
            raise NotInGroupError(f"matrix does not permute the roots (root {ROOTS[i]} maps off the root system)")
        perm[i] = idx
    return perm


def fingerprint_rows(perms: np.ndarray) -> np.ndarray:
    """Injective int64 fingerprints for a (n, 126) batch of permutations."""
    return perms[:, _SIMPLE_IDX].astype(np.int64) @ _FP_POWERS


# exact solver data for recovering a matrix from a fingerprint: columns of
# B are the 7 simple roots followed by K
_B = sympy.Matrix([[picard.SIMPLE_ROOTS[j][i] for j in range(7)] + [picard.K[i]]
                   for i in range(8)])
_B_INV = _B.inv()


def perm_from_fingerprint(fp: int) -> np.ndarray:
    m = matrix_from_fingerprint(fp)
    return matrix_to_perm(m)


def matrix_from_fingerprint(fp: int) -> np.ndarray:
    """Reconstruct the unique group element with the given fingerprint."""
    digits = []
    x = int(fp)
    for _ in range(7):
        digits.append(x % 126)
        x //= 126
    cols = [ROOTS[d] for d in digits] + [picard.K]
    bp = sympy.Matrix([[cols[j][i] for j in range(8)] for i in range(8)])
    m = bp * _B_INV
    arr = np.array([[int(m[i, j]) for j in range(8)] for i in range(8)], dtype=np.int64)
    return arr


def simple_reflections() -> list[np.ndarray]:
    """Matrices of the reflections in the 7 simple roots."""
    return [np.array(picard.reflection_matrix(r), dtype=np.int64)
            for r in picard.SIMPLE_ROOTS]


def embed_permutation(sigma: dict | list | tuple) -> np.ndarray:
    """The Weyl element fixing L and sending Ei to E_{sigma(i)}.

    sigma maps {1..7} -> {1..7}; accepts a dict, or a sequence s with
    s[i-1] = sigma(i).
    """
    if not isinstance(sigma, dict):
        sigma = {i + 1: s for i, s in enumerate(sigma)}
    if sorted(sigma) != list(range(1, 8)) or sorted(sigma.values()) != list(range(1, 8)):
        raise ValueError(f"not a permutation of 1..7: {sigma}")
    m = np.zeros((8, 8), dtype=np.int64)
    m[0, 0] = 1
    for i in range(1, 8):
        m[sigma[i], i] = 1
    return m


def cycle_type_permutation(cycle_type: tuple[int, ...]) -> dict:
    """Permutation of {1..7} with the given cycle type, cycles laid out in
    decreasing length on consecutive indices."""
    if sorted(cycle_type, reverse=True) != list(cycle_type):
        cycle_type = tuple(sorted(cycle_type, reverse=True))
    if sum(cycle_type) != 7 or any(c < 1 for c in cycle_type):
        raise ValueError(f"not a partition of 7: {cycle_type}")
    sigma = {}
    start = 1
    for length in cycle_type:
        for j in range(length):
            sigma[start + j] = start + (j + 1) % length
        start += length
    return sigma


def trace_pic(w: np.ndarray) -> int:
    """Trace on the full Picard lattice (1 + trace on the standard rep)."""
    return int(np.trace(w))


def _det_sign(w: np.ndarray) -> int:
    d = int(sympy.Matrix(w.tolist()).det())
    if d not in (1, -1):
        raise NotInGroupError(f"determinant {d}, expected +-1")
    return d


def sign_decompose(w: np.ndarray) -> tuple[np.ndarray, int]:
    """Split w along W(E7) = Sp(6,2) x {+-1}.

    Returns (positive_part, sign) where sign is the determinant on the
    Picard lattice (the central Z/2 coordinate) and positive_part has
    determinant +1.
    """
    sign = _det_sign(w)
    pos = w if sign == 1 else CENTRAL_NEG @ w
    return pos, sign


def element_order_from_perm(perm: np.ndarray) -> int:
    """Order of the element = lcm of cycle lengths of its root action
    (the action on roots is faithful)."""
    seen = np.zeros(N_ROOTS, dtype=bool)
    order = 1
    for i in range(N_ROOTS):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = int(perm[j])
            length += 1
        order = int(np.lcm(order, length))
    return order


def _char_poly_std(m: np.ndarray) -> tuple[int, ...]:
    """Coefficients (ascending) of the degree-7 characteristic polynomial on
    the K-orthogonal complement: charpoly(m) / (x - 1)."""
    x = sympy.symbols("x")
    cp = sympy.Matrix(m.tolist()).charpoly(x).as_expr()
    quo, rem = sympy.div(cp, x - 1, x)
    if rem != 0:
        raise NotInGroupError("characteristic polynomial has no (x - 1) factor; element does not fix K")
    p = sympy.Poly(quo, x)
    coeffs = [int(c) for c in reversed(p.all_coeffs())]
    return tuple(coeffs)


@dataclass(frozen=True)
class ConjugacyClassHandle:
    name: str  # signed label, e.g. "-3B"
    element_order: int
    size: int
    sign: int  # determinant on Pic = the Z/2 coordinate
    trace_pic: int
    char_poly_std: tuple  # 8 ints, ascending
    representative: tuple  # 8x8 matrix as nested tuples

    @property
    def trace_std(self) -> int:
        return self.trace_pic - 1

    @property
    def unsigned_name(self) -> str:
        return self.name.lstrip("-")

    def rep_matrix(self) -> np.ndarray:
        return np.array(self.representative, dtype=np.int64)


@dataclass
class GroupData:
    """Everything the counting pipeline needs about W(E7)."""

    sorted_fps: np.ndarray  # int64, all 2,903,040 fingerprints, sorted
    class_id: np.ndarray  # int16 aligned with sorted_fps
    classes: list  # of ConjugacyClassHandle, indexed by class id
    name_warnings: list

    @property
    def order(self) -> int:
        return len(self.sorted_fps)

    def class_by_name(self, name: str) -> ConjugacyClassHandle:
        for c in self.classes:
            if c.name == name:
                return c
        raise KeyError(f"no conjugacy class named {name!r}")

    def identify_class(self, w: np.ndarray) -> str:
        """Signed label of the class containing w; fails loudly if w is not
        a form-preserving, K-fixing lattice automorphism in the group."""
        w = np.asarray(w, dtype=np.int64)
        if w.shape != (8, 8):
            raise NotInGroupError(f"expected an 8x8 matrix, got shape {w.shape}")
        if not np.array_equal(w.T @ _FORM @ w, _FORM):
            raise NotInGroupError("matrix does not preserve the intersection form")
        if not np.array_equal(w @ _K, _K):
            raise NotInGroupError("matrix does not fix the canonical class")
        perm = matrix_to_perm(w)
        fp = int(fingerprint_rows(perm[None, :])[0])
        pos = int(np.searchsorted(self.sorted_fps, fp))
        if pos >= len(self.sorted_fps) or self.sorted_fps[pos] != fp:
            raise NotInGroupError("matrix is not an element of the enumerated group")
        return self.classes[int(self.class_id[pos])].name

    def iter_elements(self, limit: int | None = None):
        """Yield group elements as 8x8 integer matrices, reconstructed from
        their fingerprints.  Slow for the full group; meant for sampling."""
        n = self.order if limit is None else min(limit, self.order)
        for i in range(n):
            yield matrix_from_fingerprint(int(self.sorted_fps[i]))

    def class_report(self) -> list[dict]:
        return [
            {
                "name": c.name,
                "order": c.element_order,
                "size": c.size,
                "sign": c.sign,
                "trace_pic": c.trace_pic,
                "trace_std": c.trace_std,
                "char_poly_std": list(c.char_poly_std),
            }
            for c in self.classes
        ]


def _enumerate_fingerprints(gens_p: list[np.ndarray], max_elements: int) -> np.ndarray:
    """Breadth-first closure over the generators; returns all fingerprints,
    sorted.  Exact: fingerprints are injective on the group."""
    identity = np.arange(N_ROOTS, dtype=np.uint8)
    frontier = identity[None, :]
    seen = fingerprint_rows(frontier)
    while len(frontier):
        batches = [g[frontier] for g in gens_p]
        cand = np.concatenate(batches, axis=0)
        fps = fingerprint_rows(cand)
        uniq, first = np.unique(fps, return_index=True)
        pos = np.searchsorted(seen, uniq)
        pos_c = np.minimum(pos, len(seen) - 1)
        new_mask = seen[pos_c] != uniq
        frontier = cand[first[new_mask]]
        if len(frontier):
            seen = np.union1d(seen, uniq[new_mask])
            if len(seen) > max_elements:
                raise MemoryError(
                    f"group closure exceeded the configured budget of {max_elements} elements")
    return seen


def _conjugacy_classes(sorted_fps: np.ndarray, gens_p: list[np.ndarray]):
    """Partition the group into conjugacy classes by conjugation-orbit
    closure; returns (class_id array, list of (rep matrix, size))."""
    n = len(sorted_fps)
    class_id = np.full(n, -1, dtype=np.int16)
    reps = []
    cursor = 0
    while True:
        while cursor < n and class_id[cursor] != -1:
            cursor += 1
        if cursor == n:
            break
        cid = len(reps)
        rep_m = matrix_from_fingerprint(int(sorted_fps[cursor]))
        rep_p = matrix_to_perm(rep_m)
        class_id[cursor] = cid
        size = 1
        frontier = rep_p[None, :]
        while len(frontier):
            new_rows = []
            for g in gens_p:
                conj = g[frontier[:, g]]  # s . x . s, s an involution
                fps = fingerprint_rows(conj)
                uniq, first = np.unique(fps, return_index=True)
                pos = np.searchsorted(sorted_fps, uniq)
                if not np.array_equal(sorted_fps[pos], uniq):
                    raise AssertionError("conjugate escaped the enumerated group")
                fresh = class_id[pos] == -1
                class_id[pos[fresh]] = cid
                size += int(fresh.sum())
                new_rows.append(conj[first[fresh]])
            frontier = np.concatenate(new_rows, axis=0)
        reps.append((rep_m, size))
    return class_id, reps


def _class_poly_expanded(name: str) -> list:
    return list(CLASS_RECORDS[name].count_poly.expanded)


def _aggregation_residuals(classes: list) -> dict:
    """For each possible trace a, the difference between
    sum(size * class polynomial) over signed classes with Pic trace a
    and the embedded trace polynomial.  Empty dict = assignment valid."""
    residuals = {}
    for a in POSSIBLE_TRACES:
        total = []
        for c in classes:
            if c.trace_pic == a:
                total = poly_add(total, poly_scale(c.size, _class_poly_expanded(c.unsigned_name)))
        expect = list(TRACE_RECORDS[a].count_poly.expanded)
        if not poly_eq(total, expect):
            residuals[a] = poly_add(total, poly_scale(-1, expect))
    return residuals


def _assign_names(sorted_fps, class_id, reps) -> tuple[list, list]:
    """Attach invariants and ATLAS-style names to the raw classes.

    Positive (determinant +1) classes get letters by ascending class size
    within each element order; a negative class inherits the label of its
    positive partner (located exactly, via the fingerprint of the central
    element times its representative) with a leading minus.  The assignment
    is validated against the trace-table aggregation identity; on failure,
    letters are permuted within the offending element orders until it holds.
    """
    raw = []
    for cid, (m, size) in enumerate(reps):
        perm = matrix_to_perm(m)
        cp = _char_poly_std(m)
        raw.append({
            "cid": cid,
            "matrix": m,
            "size": size,
            "order": element_order_from_perm(perm),
            "trace_pic": int(np.trace(m)),
            "char_poly_std": cp,
            # det on the std rep = (-1)^7 * constant coefficient of its
            # monic degree-7 characteristic polynomial; K contributes +1
            "sign": -cp[0],
        })

    # cid of the paired class (representative times the central element)
    for r in raw:
        p = matrix_to_perm(CENTRAL_NEG @ r["matrix"])
        fp = int(fingerprint_rows(p[None, :])[0])
        pos = int(np.searchsorted(sorted_fps, fp))
        assert sorted_fps[pos] == fp
        r["partner_cid"] = int(class_id[pos])

    positives = [r for r in raw if r["sign"] == 1]
    by_order: dict[int, list] = {}
    for r in positives:
        by_order.setdefault(r["order"], []).append(r)
    for order in by_order:
        by_order[order].sort(key=lambda r: (r["size"], r["char_poly_std"]))

    def build_classes(letter_maps):
        names = {}
        for order, rs in by_order.items():
            perm_letters = letter_maps.get(order, list(range(len(rs))))
            for slot, r in zip(perm_letters, rs):
                names[r["cid"]] = f"{order}{chr(ord('A') + slot)}"
        classes = []
        for r in raw:
            name = names[r["cid"]] if r["sign"] == 1 else "-" + names[r["partner_cid"]]
            classes.append(ConjugacyClassHandle(
                name=name,
                element_order=r["order"],
                size=r["size"],
                sign=r["sign"],
                trace_pic=r["trace_pic"],
                char_poly_std=r["char_poly_std"],
                representative=tuple(tuple(int(x) for x in row) for row in r["matrix"]),
            ))
        return classes

    classes = build_classes({})
    warnings = []
    residuals = _aggregation_residuals(classes)
    if residuals:
        # try permuting letters within one element order at a time
        fixed = False
        for order, rs in by_order.items():
            if len(rs) < 2:
                continue
            for perm_letters in permutations(range(len(rs))):
                cand = build_classes({order: list(perm_letters)})
                if not _aggregation_residuals(cand):
                    classes = cand
                    warnings.append(
                        f"letter assignment within order {order} permuted to {perm_letters} "
                        f"to satisfy the trace aggregation identity")
                    fixed = True
                    break
            if fixed:
                break
        if not fixed:
            warnings.append(
                "trace aggregation identity fails for every single-order letter permutation; "
                f"failing traces with size-sorted letters: {sorted(residuals)}")
    return classes, warnings


_CACHE_VERSION = 1


def _generator_hash(gens_p: list[np.ndarray]) -> str:
    h = hashlib.sha256()
    h.update(f"v{_CACHE_VERSION}".encode())
    for g in gens_p:
        h.update(g.tobytes())
    return h.hexdigest()[:16]


def default_cache_dir() -> Path:
    return Path.home() / ".cache" / "dp2count"


def build_group(cache_dir: Path | str | None = None, no_cache: bool = False,
                max_elements: int = 4_000_000) -> GroupData:
    """Enumerate W(E7) from the 7 simple reflections and compute its
    conjugacy classes.  Results are cached on disk keyed by a content hash
    of the generator set."""
    gens = simple_reflections()
    gens_p = [matrix_to_perm(g) for g in gens]
    key = _generator_hash(gens_p)
    cache_dir = default_cache_dir() if cache_dir is None else Path(cache_dir)
    npz_path = cache_dir / f"group-{key}.npz"
    meta_path = cache_dir / f"group-{key}.json"

    if not no_cache and npz_path.exists() and meta_path.exists():
        arrays = np.load(npz_path)
        meta = json.loads(meta_path.read_text())
        classes = [
            ConjugacyClassHandle(
                name=c["name"],
                element_order=c["order"],
                size=c["size"],
                sign=c["sign"],
                trace_pic=c["trace_pic"],
                char_poly_std=tuple(c["char_poly_std"]),
                representative=tuple(tuple(row) for row in c["representative"]),
            )
            for c in meta["classes"]
        ]
        return GroupData(arrays["sorted_fps"], arrays["class_id"], classes,
                         meta.get("name_warnings", []))

    sorted_fps = _enumerate_fingerprints(gens_p, max_elements)
    class_id, reps = _conjugacy_classes(sorted_fps, gens_p)
    classes, warnings = _assign_names(sorted_fps, class_id, reps)
    group = GroupData(sorted_fps, class_id, classes, warnings)

    if not no_cache:
        cache_dir.mkdir(parents=True, exist_ok=True)
        np.savez_compressed(npz_path, sorted_fps=sorted_fps, class_id=class_id)
        meta = {
            "classes": [
                {
                    "name": c.name,
                    "order": c.element_order,
                    "size": c.size,
                    "sign": c.sign,
                    "trace_pic": c.trace_pic,
                    "char_poly_std": list(c.char_poly_std),
                    "representative": [list(row) for row in c.representative],
                }
                for c in classes
            ],
            "name_warnings": warnings,
        }
        meta_path.write_text(json.dumps(meta))
    return group
