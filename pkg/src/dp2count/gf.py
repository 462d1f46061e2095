"""Finite fields F_{p^k} for odd p, sized for brute-force search.

Elements are plain ints in [0, p^k): the base-p digits of the int are the
coefficients of the element in the polynomial basis (constant term =
least significant digit).  The modulus is the lexicographically smallest
monic irreducible of its degree (coefficients compared low-degree
first), so a given (p, k) always produces the same field.

Besides scalar operations, a field carries full numpy add/mul tables and
negation/inverse/Frobenius arrays so that the search code in
dp2count.oracle can evaluate determinants over millions of points with
fancy indexing.  Tables are exact integer data; nothing here is float.
"""

from __future__ import annotations

import numpy as np

_DEFAULT_MAX_ORDER = 20_000  # table memory is O(order^2)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- dense polynomial arithmetic over F_p (coefficient lists, ascending) --

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pmod(a, f, p):
    # f monic
    a = list(a)
    df = len(f) - 1
    while len(a) - 1 >= df and a:
        c = a[-1]
        if c:
            shift = len(a) - 1 - df
            for i, fc in enumerate(f):
                a[shift + i] = (a[shift + i] - c * fc) % p
        a.pop()
    return _ptrim(a)


def _ppowmod(base, e, f, p):
    result = [1]
    base = _pmod(base, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        # a mod b, with b made monic
        lead = b[-1]
        if lead != 1:
            inv = pow(lead, p - 2, p)
            b = [(c * inv) % p for c in b]
        a, b = b, _pmod(a, b, p)
    return a


def _is_irreducible(f, p):
    k = len(f) - 1
    x = [0, 1]
    xq = _ppowmod(x, p ** k, f, p)
    if _ptrim([(a - b) % p for a, b in zip(xq + [0] * len(x), x + [0] * len(xq))]) != []:
        return False
    for r in _prime_factors(k):
        d = k // r
        xd = _ppowmod(x, p ** d, f, p)
        diff = [0] * max(len(xd), 2)
        for i, c in enumerate(xd):
            diff[i] = c
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(f, _ptrim(diff), p)
        if len(g) - 1 != 0:
            return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over F_p,
    low-degree coefficients compared first."""
    if k == 1:
        return (0, 1)  # x itself
    for tail in range(p ** k):
        coeffs = []
        t = tail
        for _ in range(k):
            coeffs.append(t % p)
            t //= p
        f = coeffs + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found (impossible)")


class GF:
    """The field with p^k elements, odd p.  Elements are ints in [0, p^k)."""

    def __init__(self, p: int, k: int, max_order: int = _DEFAULT_MAX_ORDER):
        if not is_prime(p) or p == 2:
            raise ValueError(f"p must be an odd prime, got {p}")
        if k < 1:
            raise ValueError(f"extension degree must be >= 1, got {k}")
        if p ** k > max_order:
            raise ValueError(f"field order {p ** k} exceeds the budget {max_order}")
        self.p = p
        self.k = k
        self.order = p ** k
        self.modulus = smallest_irreducible(p, k)
        self._build_tables()

    # -- scalar element ops --

    def to_poly(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_poly(self, coeffs) -> int:
        a = 0
        for c in reversed(list(coeffs)):
            a = a * self.p + c % self.p
        return a

    def add(self, a: int, b: int) -> int:
        return int(self.add_t[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_t[a, self.neg_t[b]])

    def negate(self, a: int) -> int:
        return int(self.neg_t[a])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_t[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return int(self.inv_t[a])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e else 1
        n1 = self.order - 1
        return int(self.exp_t[(int(self.log_t[a]) * (e % n1)) % n1])

    def frobenius(self, a: int, times: int = 1) -> int:
        """a^(p^times)."""
        x = a
        for _ in range(times % self.k):
            x = int(self.frob_t[x])
        return x

    def subfield_fixed(self, d: int) -> np.ndarray:
        """Sorted array of the p^d elements fixed by Frobenius^d; d | k."""
        if self.k % d != 0:
            raise ValueError(f"{d} does not divide the extension degree {self.k}")
        idx = np.arange(self.order, dtype=np.int64)
        img = idx.copy()
        for _ in range(d):
            img = self.frob_t[img]
        fixed = idx[img == idx]
        assert len(fixed) == self.p ** d
        return fixed

    # -- table construction --

    def _scalar_mul_poly(self, a: int, b: int) -> int:
        pa, pb = self.to_poly(a), self.to_poly(b)
        return self.from_poly(_pmod(_pmul(list(pa), list(pb), self.p), list(self.modulus), self.p))

    def _build_tables(self):
        n, p, k = self.order, self.p, self.k

        # multiplicative generator
        n1 = n - 1
        factors = _prime_factors(n1)

        def mult_order_ok(g):
            for f in factors:
                e, x = n1 // f, 1
                y = g
                while e:
                    if e & 1:
                        x = self._scalar_mul_poly(x, y)
                    y = self._scalar_mul_poly(y, y)
                    e >>= 1
                if x == 1:
                    return False
            return True

        gen = next(g for g in range(2, n) if mult_order_ok(g))

        exp_t = np.zeros(n1, dtype=np.int64)
        exp_t[0] = 1
        acc = 1
        for i in range(1, n1):
            acc = self._scalar_mul_poly(acc, gen)
            exp_t[i] = acc
        log_t = np.zeros(n, dtype=np.int64)
        log_t[exp_t] = np.arange(n1)

        mul_t = np.zeros((n, n), dtype=np.int32)
        logs = log_t[1:]
        mul_t[1:, 1:] = exp_t[(logs[:, None] + logs[None, :]) % n1]

        digits = np.zeros((n, k), dtype=np.int32)
        idx = np.arange(n)
        for i in range(k):
            digits[:, i] = idx % p
            idx = idx // p
        ppow = p ** np.arange(k, dtype=np.int64)
        sums = (digits[:, None, :] + digits[None, :, :]) % p
        add_t = (sums.astype(np.int64) @ ppow).astype(np.int32)
        neg_t = (((-digits) % p).astype(np.int64) @ ppow).astype(np.int32)

        inv_t = np.zeros(n, dtype=np.int32)
        inv_t[1:] = exp_t[(-logs) % n1]
        frob_t = np.zeros(n, dtype=np.int32)
        frob_t[1:] = exp_t[(logs * p) % n1]

        self.generator = gen
        self.exp_t, self.log_t = exp_t, log_t
        self.add_t, self.mul_t = add_t, mul_t
        self.neg_t, self.inv_t, self.frob_t = neg_t, inv_t, frob_t

    def __repr__(self):
        return f"GF({self.p}^{self.k}, modulus={self.modulus})"


_FIELD_CACHE: dict[tuple[int, int], GF] = {}


def make_field(p: int, k: int, max_order: int = _DEFAULT_MAX_ORDER) -> GF:
    key = (p, k)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = GF(p, k, max_order=max_order)
    return _FIELD_CACHE[key]
