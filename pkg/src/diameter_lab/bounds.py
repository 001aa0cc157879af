"""Closed-form diameter bounds, known exact values and counterexample arithmetic.

Integers and rationals are exact (``int`` / ``Fraction``).  Bounds with
irrational exponents are ``mpmath.mpf`` values computed at ``PRECISION``
decimal digits.  Asymptotic bounds stated without a constant are evaluated
with constant 1 and flagged ``constant_free``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

import mpmath

from .diameter import hirsch_excess

PRECISION = 50
_precise = mpmath.workdps(PRECISION)


def _log2(x) -> mpmath.mpf:
    return mpmath.log(x, 2)


@_precise
def _exact_if_integral(x):
    """Return an ``int`` when ``x`` is an integer to working precision."""
    r = mpmath.nint(x)
    if abs(x - r) <= mpmath.mpf(10) ** (-(PRECISION - 10)) * max(1, abs(r)):
        return int(r)
    return x


@dataclass(frozen=True)
class BoundEntry:
    name: str
    kind: str  # upper, lower, exact, conjectural, parameter
    value: object
    source: str
    quantity: str = ""
    constant_free: bool = False
    log_base: str | None = None

    def as_row(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "quantity": self.quantity,
            "value": _format(self.value),
            "float": _as_float(self.value),
            "source": self.source,
            "constant_free": self.constant_free,
            "log_base": self.log_base or "",
        }


def _format(value) -> str:
    if isinstance(value, mpmath.mpf):
        return mpmath.nstr(value, 25)
    if isinstance(value, tuple):
        return " ".join(_format(v) for v in value)
    return str(value)


def _as_float(value):
    if isinstance(value, tuple) or value is None or isinstance(value, (bool, str)):
        return None
    return float(value)


@dataclass
class BoundReport:
    parameters: dict
    entries: list = field(default_factory=list)

    def add(self, *args, **kwargs) -> None:
        self.entries.append(BoundEntry(*args, **kwargs))

    def get(self, name: str) -> BoundEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def consistency_violations(self) -> list:
        """Pairs (lower, upper) for the same quantity where lower > upper.

        Constant-free and conjectural entries are skipped.
        """
        bad = []
        firm = [e for e in self.entries if not e.constant_free and e.quantity
                and e.kind in ("upper", "lower", "exact")]
        for lo in firm:
            for hi in firm:
                if lo.quantity != hi.quantity or lo is hi:
                    continue
                if lo.kind in ("lower", "exact") and hi.kind in ("upper", "exact"):
                    if lo.value > hi.value:
                        bad.append((lo.name, hi.name))
        return bad

    def to_dict(self) -> dict:
        return {"schema": 1, "parameters": self.parameters,
                "entries": [e.as_row() for e in self.entries]}

    def to_csv(self) -> str:
        buf = io.StringIO()
        fields = ["name", "kind", "quantity", "value", "float", "source", "constant_free", "log_base"]
        writer = csv.DictWriter(buf, fieldnames=fields)
        writer.writeheader()
        for e in self.entries:
            writer.writerow(e.as_row())
        return buf.getvalue()


# --- c.l.m. bounds -----------------------------------------------------------

@_precise
def kalai_kleitman_clm(n: int, d: int):
    """Quasi-polynomial upper bound ``n^(log2 d + 1) - 1`` on c.l.m. length."""
    return _exact_if_integral(mpmath.mpf(n) ** (_log2(d) + 1) - 1)


def barnette_larman_clm(n: int, d: int) -> int:
    """Linear-in-n upper bound ``(n - 1) 2^(d-1)`` on c.l.m. length."""
    return (n - 1) * 2 ** (d - 1)


# --- polytope bounds ---------------------------------------------------------

@_precise
def polytope_bounds(n: int, d: int) -> BoundReport:
    rep = BoundReport({"n": n, "d": d})
    rep.add("kalai_kleitman", "upper", _exact_if_integral(mpmath.mpf(n) ** (_log2(d) + 2)),
            "Kalai-Kleitman", "H_p", log_base="2")
    rep.add("larman", "upper", Fraction(2) ** (d - 3) * n, "Larman", "H_p")
    rep.add("barnette", "upper", Fraction(2 * n, 3) * Fraction(2) ** (d - 3), "Barnette", "H_p")
    rep.add("hirsch", "conjectural", n - d, "Hirsch value n-d", "H_p")
    rep.add("bounded_lower", "lower", (d - 1) * n // d - (d - 2),
            "lower bound for bounded polytopes", "H_b")
    return rep


_KNOWN_HB = {
    (8, 4): 4, (9, 4): 5, (10, 5): 5, (10, 4): 5, (11, 5): 6,
    (11, 4): 6, (12, 6): 6, (12, 4): 7, (12, 5): 7,
}


def known_Hb(n: int, d: int) -> int | None:
    """Known maximum diameter of bounded ``d``-polytopes with ``n`` facets.

    ``None`` when the value is not known.  Uses the small-case table, the
    formulas for ``d <= 3`` and ``H(d + k, d) = H(2k, k)`` for ``k < d``.
    """
    if d < 1 or n <= d:
        raise ValueError("need n > d >= 1")
    k = n - d
    if k < d:
        return known_Hb(2 * k, k)
    if d == 1:
        return 1
    if d == 2:
        return n // 2
    if d == 3:
        return 2 * n // 3 - 1
    return _KNOWN_HB.get((n, d))


def known_Hb_table() -> dict:
    return dict(_KNOWN_HB)


# --- counterexample arithmetic -----------------------------------------------

@dataclass(frozen=True)
class StrongDStep:
    dimension: int
    facets: int
    diameter_lower: int
    violates_hirsch: bool

    def __iter__(self):
        return iter((self.dimension, self.facets, self.diameter_lower, self.violates_hirsch))


def strong_dstep(n: int, d: int, l: int) -> StrongDStep:
    """Polytope obtained from a spindle with ``n`` facets, dimension ``d`` and
    length ``l`` via the strong d-step construction."""
    if n <= 2 * d:
        raise ValueError("need n > 2d")
    D = n - d
    return StrongDStep(D, 2 * D, l + n - 2 * d, l > d)


def spindle_excess(n: int, d: int, l: int) -> Fraction:
    return Fraction(l - d, n - d)


def asymptotic_excess(eps, k: int) -> Fraction:
    """Excess reachable from a spindle of excess ``eps`` after ``k`` gluings."""
    return (1 - Fraction(1, k)) * Fraction(eps)


def msw_spindle(k: int) -> tuple:
    """(facets, width) of the 5-dimensional spindles in the infinite family."""
    if k < 1:
        raise ValueError("k must be positive")
    return 12 * k * (6 * k - 1), 4 + k


def msw_excess(k: int) -> Fraction:
    facets, width = msw_spindle(k)
    return spindle_excess(facets, 5, width)


# --- subdeterminant bounds ---------------------------------------------------

@_precise
def subdeterminant_bounds(d: int, M: int, n: int | None = None) -> BoundReport:
    """Bounds for polyhedra with integer constraint matrices whose
    subdeterminants are at most ``M`` in absolute value."""
    if d < 1 or M < 1:
        raise ValueError("need d >= 1 and M >= 1")
    n = n if n is not None else d
    rep = BoundReport({"d": d, "M": M, "n": n})
    d_m, M_m = mpmath.mpf(d), mpmath.mpf(M)
    factor = 1 + mpmath.sqrt(2 / mpmath.pi) / (M_m ** 2 * d_m ** 2.5)
    volume_ratio = mpmath.mpf(2) ** d * factorial(d) * d_m ** (d_m / 2) * M_m ** d
    iterations = int(mpmath.ceil(mpmath.log(volume_ratio) / mpmath.log(factor)))
    explicit = mpmath.sqrt(mpmath.pi / 2) * M_m ** 2 * d_m ** 2.5 * mpmath.log(volume_ratio)
    rep.add("expansion_factor", "parameter", factor, "volume expansion per step", log_base="e")
    rep.add("iterations", "parameter", iterations, "steps until the volume ratio is exhausted",
            log_base="e")
    rep.add("bonifas_iterated", "upper", 2 * iterations, "twice the iteration count",
            "H_M", log_base="e")
    rep.add("bonifas_explicit", "upper", explicit, "explicit form of the proof", "H_M",
            log_base="e")
    rep.add("kleinschmidt_onn", "upper", M * d, "0/k polytopes: at most k d", "H_01k")
    rep.add("dyer_frieze", "upper", d_m ** 16 * mpmath.mpf(n) ** 3 * mpmath.log(d_m * n) ** 3,
            "Dyer-Frieze (totally unimodular)", "H_M", constant_free=True, log_base="e")
    return rep


# --- miscellaneous -----------------------------------------------------------

@_precise
def misc_bounds(n: int, d: int, k: int = 1) -> BoundReport:
    rep = BoundReport({"n": n, "d": d, "k": k})
    nm = mpmath.mpf(n)
    rep.add("nonpure_upper", "upper", _exact_if_integral(nm ** (_log2(n) + 1)),
            "non-pure families", "H_np", log_base="2")
    rep.add("legal_upper", "upper", _exact_if_integral(nm ** (_log2(n) / 2)),
            "legal sequences", "y", log_base="2")
    rep.add("legal_lower_at_4^k", "lower", 4 ** comb(k, 2),
            f"legal sequences on 4^{k} = {4 ** k} elements", "y(4^k)")
    rep.add("hkp_dimension", "parameter", 2 * -(-(k + 3) ** 2 // 4), "HKP family dimension")
    rep.add("hkp_vertices", "parameter", (k + 3) ** 2 + 2, "HKP family vertices")
    rep.add("clm_rank2_exact", "exact", 2 * n - 2, "rank-2 c.l.m. maximum", "H_clm(n,2)")
    rep.add("clc_rank2_lower", "lower", 2 * n - mpmath.sqrt(n), "rank-2 c.l.c. lower bound",
            "H_clc(n,2)", constant_free=True)
    rep.add("clc_rank2_upper", "upper", 2 * n - 2, "bounded by the c.l.m. value", "H_clc(n,2)")
    rep.add("clc_4d_lower", "lower", mpmath.mpf(d) ** 2 / mpmath.log(d) if d > 1 else mpmath.mpf(0),
            f"H_clc({4 * d},{d}) growth", "H_clc(4d,d)", constant_free=True, log_base="e")
    rep.add("hahnle", "conjectural", d * (n - 1), "conjectured c.l.m. maximum", "H_clm")
    rep.add("kalai_kleitman_clm", "upper", kalai_kleitman_clm(n, d), "Kalai-Kleitman argument",
            "H_clm", log_base="2")
    rep.add("barnette_larman_clm", "upper", barnette_larman_clm(n, d), "Barnette-Larman argument",
            "H_clm")
    return rep


def full_report(n: int, d: int, M: int | None = None, l: int | None = None,
                k: int | None = None, delta: int | None = None) -> BoundReport:
    """Everything applicable to the given parameters in one table."""
    if d < 1 or n <= d:
        raise ValueError("need n > d >= 1")
    rep = BoundReport({key: v for key, v in
                       {"n": n, "d": d, "M": M, "l": l, "k": k, "delta": delta}.items()
                       if v is not None})
    rep.entries += polytope_bounds(n, d).entries
    known = known_Hb(n, d)
    if known is not None:
        rep.add("known_Hb", "exact", known, "known exact value", "H_b")
    rep.entries += misc_bounds(n, d, k or 1).entries
    if l is not None:
        rep.add("spindle_excess", "parameter", spindle_excess(n, d, l), "(l-d)/(n-d)")
        if n > 2 * d:
            D, N, lb, bad = strong_dstep(n, d, l)
            rep.add("dstep_dimension", "parameter", D, "strong d-step")
            rep.add("dstep_facets", "parameter", N, "strong d-step")
            rep.add("dstep_diameter_lower", "lower", lb, "strong d-step")
            rep.add("dstep_violates_hirsch", "parameter", bad, "strong d-step")
    if delta is not None:
        rep.add("hirsch_excess", "parameter", hirsch_excess(n, d, delta), "delta/(n-d) - 1")
    if M is not None:
        rep.entries += subdeterminant_bounds(d, M, n).entries
    return rep


__all__ = [
    "BoundEntry",
    "BoundReport",
    "PRECISION",
    "StrongDStep",
    "asymptotic_excess",
    "barnette_larman_clm",
    "full_report",
    "kalai_kleitman_clm",
    "known_Hb",
    "known_Hb_table",
    "misc_bounds",
    "msw_excess",
    "msw_spindle",
    "polytope_bounds",
    "spindle_excess",
    "strong_dstep",
    "subdeterminant_bounds",
]
