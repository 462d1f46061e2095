"""Dense univariate polynomials with exact integer coefficients.

Coefficient lists are ascending (coeffs[i] is the coefficient of q^i)
and normalized to have no trailing zeros (the zero polynomial is []).
Everything here is Python ints, never floats.
"""

from __future__ import annotations

IntPoly = list


def trim(p: IntPoly) -> IntPoly:
    while p and p[-1] == 0:
        p = p[:-1]
    return list(p)


def poly_add(a: IntPoly, b: IntPoly) -> IntPoly:
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return trim(out)


def poly_scale(c: int, a: IntPoly) -> IntPoly:
    return trim([c * x for x in a])


def poly_mul(a: IntPoly, b: IntPoly) -> IntPoly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def poly_pow(a: IntPoly, n: int) -> IntPoly:
    out = [1]
    for _ in range(n):
        out = poly_mul(out, a)
    return out


def poly_eval(a: IntPoly, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def poly_eq(a: IntPoly, b: IntPoly) -> bool:
    return trim(a) == trim(b)


def poly_str(a: IntPoly, var: str = "q") -> str:
    a = trim(a)
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        c = abs(c)
        if i == 0:
            term = str(c)
        else:
            mon = var if i == 1 else f"{var}^{i}"
            term = mon if c == 1 else f"{c}{mon}"
        parts.append(f"{sign} {term}" if parts else f"{sign}{term}")
    return " ".join(parts)
