"""Embedded counting polynomials.

Two tables, shipped as data/tables.json:
  * 30 class polynomials: for each unsigned conjugacy-class label of
    Sp(6,2) (equivalently, each +/- pair of W(E7) classes), the number of
    geometrically marked degree-2 Del Pezzo surfaces over F_q on which
    the Frobenius acts as an element of that class.
  * 13 trace polynomials: the number of surfaces on which the Frobenius
    acts with a given Picard trace a.

Each polynomial is stored both in factored form (as printed in the
source tables) and as a frozen expanded coefficient list; validation
re-expands the factors and compares, so a transcription slip shows up
as a hard identity failure rather than a silently wrong count.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .intpoly import poly_eq, poly_eval, poly_mul, poly_pow, trim

POSSIBLE_TRACES = (-6, -4, -3, -2, -1, 0, 1, 2, 3, 4, 5, 6, 8)


class DataIntegrityError(Exception):
    """A stored factored form disagrees with its frozen expansion."""


@dataclass(frozen=True)
class CountingPolynomial:
    scale: int
    factors: tuple  # of (coeffs tuple, multiplicity)
    expanded: tuple  # frozen dense coefficients, ascending

    def expand_factors(self) -> list:
        p = [self.scale]
        for coeffs, mult in self.factors:
            p = poly_mul(p, poly_pow(list(coeffs), mult))
        return p

    def __call__(self, q: int) -> int:
        return poly_eval(list(self.expanded), q)

    @property
    def degree(self) -> int:
        return len(trim(list(self.expanded))) - 1


@dataclass(frozen=True)
class ConjClassRecord:
    atlas_name: str  # unsigned, e.g. "7A"
    element_order: int
    count_poly: CountingPolynomial
    # filled from the group computation, never hand-entered:
    sp62_size: int | None = None
    chi_std: int | None = None


@dataclass(frozen=True)
class TraceRecord:
    trace_a: int
    count_poly: CountingPolynomial


def _load_poly(d: dict) -> CountingPolynomial:
    return CountingPolynomial(
        scale=d["scale"],
        factors=tuple((tuple(f["coeffs"]), f["multiplicity"]) for f in d["factors"]),
        expanded=tuple(d["expanded"]),
    )


def _load() -> tuple[dict, dict]:
    raw = json.loads(resources.files("dp2count").joinpath("data/tables.json").read_text())
    classes = {
        c["name"]: ConjClassRecord(
            atlas_name=c["name"],
            element_order=c["element_order"],
            count_poly=_load_poly(c["poly"]),
        )
        for c in raw["classes"]
    }
    traces = {t["trace"]: TraceRecord(t["trace"], _load_poly(t["poly"])) for t in raw["traces"]}
    return classes, traces


CLASS_RECORDS, TRACE_RECORDS = _load()
CLASS_NAMES = tuple(CLASS_RECORDS)  # 30 unsigned labels, table row order
SIGNED_CLASS_NAMES = tuple(n for name in CLASS_NAMES for n in (name, "-" + name))


def class_record(name: str) -> ConjClassRecord:
    """Look up a class record by unsigned or signed label."""
    unsigned = name[1:] if name.startswith("-") else name
    try:
        return CLASS_RECORDS[unsigned]
    except KeyError:
        raise KeyError(
            f"unknown class label {name!r}; valid labels: {', '.join(CLASS_NAMES)}"
        ) from None


def trace_record(a: int) -> TraceRecord:
    try:
        return TRACE_RECORDS[a]
    except KeyError:
        raise KeyError(
            f"{a} is not a possible Picard trace; valid traces: {POSSIBLE_TRACES}"
        ) from None


def validate_embedded_data() -> dict:
    """Re-expand every factored form and check the cross-table identities.

    Returns a report dict; raises DataIntegrityError on any mismatch.
    """
    checks = []

    def check(label, ok):
        checks.append({"check": label, "pass": bool(ok)})
        if not ok:
            raise DataIntegrityError(label)

    for name, rec in CLASS_RECORDS.items():
        p = rec.count_poly
        check(f"class {name}: factored form expands to stored coefficients",
              poly_eq(p.expand_factors(), list(p.expanded)))
        check(f"class {name}: monic of degree 6",
              p.degree == 6 and p.expanded[6] == 1)
    for a, rec in TRACE_RECORDS.items():
        p = rec.count_poly
        check(f"trace {a}: factored form expands to stored coefficients",
              poly_eq(p.expand_factors(), list(p.expanded)))
    for a in POSSIBLE_TRACES:
        check(f"trace {a} equals trace {2 - a}",
              TRACE_RECORDS[a].count_poly.expanded == TRACE_RECORDS[2 - a].count_poly.expanded)
    check("trace -6 row equals class 1A row",
          TRACE_RECORDS[-6].count_poly.expanded == CLASS_RECORDS["1A"].count_poly.expanded)
    check("trace 8 row equals class 1A row",
          TRACE_RECORDS[8].count_poly.expanded == CLASS_RECORDS["1A"].count_poly.expanded)
    check("class rows 4C and 4E are identical",
          CLASS_RECORDS["4C"].count_poly.expanded == CLASS_RECORDS["4E"].count_poly.expanded)
    return {"n_checks": len(checks), "all_pass": True, "checks": checks}
