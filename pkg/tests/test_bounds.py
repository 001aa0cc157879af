from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from math import log2

import pytest
from hypothesis import given, strategies as st

from diameter_lab.bounds import (
    asymptotic_excess,
    barnette_larman_clm,
    full_report,
    kalai_kleitman_clm,
    known_Hb,
    known_Hb_table,
    misc_bounds,
    msw_excess,
    msw_spindle,
    polytope_bounds,
    spindle_excess,
    strong_dstep,
    subdeterminant_bounds,
)
from diameter_lab.clm import max_clm_search
from diameter_lab.diameter import hirsch_excess


KNOWN_VALUES = [
    ((8, 4), 4), ((9, 4), 5), ((10, 5), 5), ((10, 4), 5), ((11, 5), 6),
    ((11, 4), 6), ((12, 6), 6), ((12, 4), 7), ((12, 5), 7),
]


@pytest.mark.parametrize("nd, value", KNOWN_VALUES)
def test_known_table(nd, value):
    assert known_Hb(*nd) == value


def test_table_has_exactly_nine_entries():
    assert known_Hb_table() == dict(KNOWN_VALUES)


@pytest.mark.parametrize("n", range(3, 20))
def test_low_dimension_formulas(n):
    assert known_Hb(n, 1) == 1
    if n >= 4:
        assert known_Hb(n, 2) == n // 2
    if n >= 6:
        assert known_Hb(n, 3) == 2 * n // 3 - 1


@pytest.mark.parametrize("d", range(2, 8))
@pytest.mark.parametrize("k", range(1, 7))
def test_dstep_reduction(d, k):
    if k < d:
        assert known_Hb(d + k, d) == known_Hb(2 * k, k)


def test_lower_formula_matches_twelve_four():
    assert (4 - 1) * 12 // 4 - (4 - 2) == 7 == known_Hb(12, 4)
    assert polytope_bounds(12, 4).get("bounded_lower").value == 7


@pytest.mark.parametrize("nd, value", KNOWN_VALUES)
def test_lower_formula_below_known(nd, value):
    assert polytope_bounds(*nd).get("bounded_lower").value <= value


def test_unknown_returns_none():
    assert known_Hb(14, 4) is None
    with pytest.raises(ValueError):
        known_Hb(4, 4)


def test_excess_values():
    assert hirsch_excess(8, 4, 5) == Fraction(1, 4)
    assert spindle_excess(25, 5, 6) == Fraction(1, 20)


def test_strong_dstep_values():
    assert tuple(strong_dstep(25, 5, 6)) == (20, 40, 21, True)
    D, N, lb, bad = strong_dstep(48, 5, 6)
    assert (D, N, lb) == (43, 86, 44) and bad
    assert not strong_dstep(25, 5, 5).violates_hirsch
    with pytest.raises(ValueError):
        strong_dstep(10, 5, 6)


def test_msw_family():
    assert msw_spindle(1) == (60, 5)
    assert msw_excess(1) == 0
    assert msw_excess(2) == Fraction(1, 259)
    assert msw_excess(3) == Fraction(2, 607)
    values = [msw_excess(k) for k in range(2, 101)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert all(v > 0 for v in values)


def test_asymptotic_excess():
    assert asymptotic_excess(Fraction(1, 20), 2) == Fraction(1, 40)
    assert asymptotic_excess(Fraction(1, 20), 1) == 0


def test_clm_bounds_integral_values():
    assert kalai_kleitman_clm(4, 2) == 15
    assert isinstance(kalai_kleitman_clm(4, 2), int)
    assert barnette_larman_clm(4, 3) == 12


@pytest.mark.parametrize("n", range(2, 11))
@pytest.mark.parametrize("d", range(2, 11))
def test_clm_bounds_dominate_hahnle(n, d):
    assert kalai_kleitman_clm(n, d) >= d * (n - 1)
    assert barnette_larman_clm(n, d) >= d * (n - 1)
    assert float(kalai_kleitman_clm(n, d)) == pytest.approx(n ** (log2(d) + 1) - 1, rel=1e-12)


@pytest.mark.parametrize("n", range(2, 5))
def test_rank_two_exact_value_matches_search(n):
    assert misc_bounds(n, 2).get("clm_rank2_exact").value == max_clm_search(n, 2).max_length


def test_subdeterminant_monotone():
    for d in range(1, 21):
        values = [subdeterminant_bounds(d, M).get("bonifas_iterated").value for M in range(1, 21)]
        assert values == sorted(values)
    for M in range(1, 21):
        values = [subdeterminant_bounds(d, M).get("bonifas_iterated").value for d in range(1, 21)]
        assert values == sorted(values)


def test_subdeterminant_entries():
    rep = subdeterminant_bounds(10, 1, 10)
    assert rep.get("dyer_frieze").constant_free
    assert rep.get("bonifas_explicit").value < rep.get("dyer_frieze").value
    assert rep.get("kleinschmidt_onn").value == 10
    with pytest.raises(ValueError):
        subdeterminant_bounds(0, 1)


@given(st.integers(3, 30), st.integers(2, 8))
def test_report_is_consistent(n, d):
    if n <= d:
        return
    assert full_report(n, d, M=2, l=d + 1, k=2, delta=n - d).consistency_violations() == []


def test_consistency_detects_conflict():
    rep = polytope_bounds(12, 4)
    rep.add("fake", "lower", 10 ** 9, "test", "H_p")
    assert ("fake", "larman") in rep.consistency_violations()


def test_json_and_csv():
    rep = full_report(25, 5, M=2, l=6, k=2, delta=21)
    data = json.loads(json.dumps(rep.to_dict()))
    assert data["schema"] == 1
    names = [e["name"] for e in data["entries"]]
    assert "dstep_diameter_lower" in names and "bonifas_iterated" in names
    rows = list(csv.DictReader(io.StringIO(rep.to_csv())))
    assert len(rows) == len(rep.entries)
    row = next(r for r in rows if r["name"] == "spindle_excess")
    assert Fraction(row["value"]) == Fraction(1, 20)
