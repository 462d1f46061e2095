"""Query layer over the embedded tables and the computed group data.

Evaluates class counts and trace counts at odd prime powers, checks the
trace-table aggregation identity as an exact polynomial statement, and
reproduces the existence exceptions (which classes/traces are missing
over which small fields).
"""

from __future__ import annotations

from dataclasses import dataclass

from .intpoly import poly_add, poly_eq, poly_scale
from .tables import (CLASS_NAMES, POSSIBLE_TRACES, class_record, trace_record)


class InvalidFieldSizeError(ValueError):
    pass


@dataclass(frozen=True)
class OddPrimePower:
    q: int
    p: int
    k: int

    @classmethod
    def parse(cls, q: int) -> "OddPrimePower":
        if q < 3:
            raise InvalidFieldSizeError(f"q must be an odd prime power >= 3, got {q}")
        if q % 2 == 0:
            raise InvalidFieldSizeError(
                f"q = {q} is even; the counting formulas are only valid in odd "
                "characteristic (they give wrong answers at q = 2)")
        n, p = q, None
        d = 3
        while d * d <= n:
            if n % d == 0:
                p = d
                break
            d += 2
        if p is None:
            p = n
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        if n != 1:
            raise InvalidFieldSizeError(f"q = {q} is not a prime power")
        return cls(q=q, p=p, k=k)


def odd_prime_powers(limit: int) -> list[int]:
    """All odd prime powers q with 3 <= q <= limit, ascending."""
    out = []
    for q in range(3, limit + 1, 2):
        try:
            OddPrimePower.parse(q)
        except InvalidFieldSizeError:
            continue
        out.append(q)
    return out


def evaluate_class_count(name: str, q: int) -> int:
    """Number of geometrically marked surfaces over F_q with Frobenius in
    the given (signed or unsigned) class; the value only depends on the
    unsigned pair."""
    OddPrimePower.parse(q)
    return class_record(name).count_poly(q)


def count_by_trace(a: int, q: int) -> int:
    """Number of surfaces over F_q on which the Frobenius acts with Picard
    trace a."""
    OddPrimePower.parse(q)
    return trace_record(a).count_poly(q)


def surface_point_count(a: int, q: int) -> int:
    """|X(F_q)| = q^2 + a q + 1 for a surface with Picard trace a."""
    return q * q + a * q + 1


def existence_exceptions(q: int) -> dict:
    """Signed class labels and traces whose count at q is zero."""
    OddPrimePower.parse(q)
    class_exceptions = []
    for name in CLASS_NAMES:
        if class_record(name).count_poly(q) == 0:
            class_exceptions.extend([name, "-" + name])
    trace_exceptions = [a for a in POSSIBLE_TRACES if trace_record(a).count_poly(q) == 0]
    return {"q": q, "class_exceptions": class_exceptions, "trace_exceptions": trace_exceptions}


def aggregation_check(group, q_sweep: list[int] | None = None) -> dict:
    """Exact check that, for every possible trace a, the sum of
    (class size) * (class polynomial) over the signed classes with Picard
    trace a equals the trace polynomial -- coefficientwise, using the
    sizes and traces computed from the group, and optionally also
    pointwise on a sweep of odd prime powers.
    """
    rows = []
    all_pass = True
    for a in POSSIBLE_TRACES:
        contributors = [c for c in group.classes if c.trace_pic == a]
        total: list = []
        for c in contributors:
            total = poly_add(
                total, poly_scale(c.size, list(class_record(c.unsigned_name).count_poly.expanded)))
        expected = list(trace_record(a).count_poly.expanded)
        ok = poly_eq(total, expected)
        sweep_ok = True
        if q_sweep:
            for q in q_sweep:
                lhs = sum(c.size * evaluate_class_count(c.unsigned_name, q) for c in contributors)
                if lhs != count_by_trace(a, q):
                    sweep_ok = False
                    break
        rows.append({
            "trace": a,
            "contributors": [{"name": c.name, "size": c.size} for c in contributors],
            "polynomial_identity": ok,
            "sweep_pass": sweep_ok,
        })
        all_pass = all_pass and ok and sweep_ok
    return {"all_pass": all_pass, "rows": rows, "letter_warnings": list(group.name_warnings)}
