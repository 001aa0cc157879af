from __future__ import annotations

import time
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from diameter_lab.complex_core import PureComplex
from diameter_lab.constructions import (
    barycentric_subdivision,
    corridor_2complex,
    join,
    octahedron_boundary,
    simplex_boundary,
    torus7,
)
from diameter_lab.diameter import dual_distance
from diameter_lab.errors import BadAnchor, InvalidComplex, NotCertified, NotFlag, NotNormal
from diameter_lab.nonrevisiting import (
    NonRevisitingSolver,
    SegmentBuilder,
    combinatorial_segment,
    is_segment,
    non_revisiting_path,
    non_revisiting_sweep,
    segment_monotone_check,
    star_property_violation,
)

import oracles


def cycle(n):
    return PureComplex.from_facets([[i, (i + 1) % n] for i in range(n)])


BARY3 = barycentric_subdivision(simplex_boundary(3))[0]
BARY4 = barycentric_subdivision(simplex_boundary(4))[0]

FLAG_NORMAL = [
    cycle(4),
    cycle(6),
    cycle(9),
    octahedron_boundary(),
    barycentric_subdivision(simplex_boundary(2))[0],
    BARY3,
    join(cycle(4), cycle(5)),
]


def _check_all_pairs(C):
    solver = NonRevisitingSolver(C)
    worst = 0
    for X in C.facets:
        for Y in C.facets:
            res = solver.solve(X, Y)
            facets = res.path.facets
            assert facets[0] == X and facets[-1] == Y
            assert oracles.is_non_revisiting(facets)
            assert res.path.length <= res.length_bound
            assert res.path.length >= dual_distance(C, X, Y)
            worst = max(worst, res.path.length)
    return worst


@pytest.mark.parametrize("C", FLAG_NORMAL)
def test_all_pairs_non_revisiting(C):
    _check_all_pairs(C)


def test_hexagon_worst_length():
    assert _check_all_pairs(cycle(6)) == 3


def test_barycentric_tetrahedron_all_pairs():
    assert _check_all_pairs(BARY3) == 6


def test_barycentric_four_simplex_all_pairs_timed():
    t0 = time.perf_counter()
    worst = _check_all_pairs(BARY4)
    assert time.perf_counter() - t0 < 120
    assert worst <= BARY4.n - BARY4.d


def test_trivial_and_adjacent_pairs():
    C = octahedron_boundary()
    X = C.facets[0]
    assert non_revisiting_path(C, X, X).length == 0
    for Y in C.facets:
        if len(set(X) & set(Y)) == C.d - 1:
            assert non_revisiting_path(C, X, Y).length == 1


def test_deterministic():
    X, Y = BARY3.facets[0], BARY3.facets[-1]
    a = NonRevisitingSolver(BARY3).solve(X, Y, with_trace=True)
    b = NonRevisitingSolver(BARY3).solve(X, Y, with_trace=True)
    assert a.path == b.path and a.trace == b.trace
    assert a.to_dict()["length"] == a.path.length


def test_sweep_independent_of_jobs():
    pairs = [(X, Y) for X in BARY3.facets[:6] for Y in BARY3.facets]
    one = non_revisiting_sweep(BARY3, pairs, jobs=1)
    two = non_revisiting_sweep(BARY3, pairs, jobs=2)
    assert [r.path for r in one] == [r.path for r in two]


def test_input_checks():
    with pytest.raises(NotNormal):
        NonRevisitingSolver(corridor_2complex(7))
    with pytest.raises(NotFlag):
        NonRevisitingSolver(simplex_boundary(3))
    with pytest.raises(InvalidComplex):
        NonRevisitingSolver(cycle(6)).solve((0, 1), (0, 3))


@pytest.mark.parametrize("C", [simplex_boundary(2), simplex_boundary(3)])
def test_nonflag_override_still_produces_paths(C):
    solver = NonRevisitingSolver(C, require_flag=False)
    for X in C.facets:
        for Y in C.facets:
            assert solver.solve(X, Y).non_revisiting


def test_nonflag_override_reports_level():
    solver = NonRevisitingSolver(torus7(), require_flag=False)
    failures = []
    for X in torus7().facets:
        for Y in torus7().facets:
            try:
                solver.solve(X, Y)
            except NotCertified as exc:
                failures.append(exc)
    assert failures
    assert all(isinstance(e.level, int) for e in failures)
    assert all(set(e.witness) == {"position", "vertex"} for e in failures)


# --- segments ------------------------------------------------------------------

def test_segment_distance_zero():
    cert = combinatorial_segment(cycle(6), (0, 1), {1, 4})
    assert cert.case == "distance-zero" and cert.length == 0


def test_segment_in_points():
    points = PureComplex.from_facets([[0], [1], [2]])
    cert = SegmentBuilder(points).segment(points, (0,), {2})
    assert cert.case == "dimension-zero"
    assert cert.path == ((0,), (2,))


def test_segment_on_hexagon():
    C = cycle(6)
    cert = combinatorial_segment(C, (0, 1), {3})
    assert cert.case == "recursive"
    assert cert.path[-1] in ((2, 3), (3, 4))
    assert segment_monotone_check(cert)


def test_bad_anchor():
    with pytest.raises(BadAnchor):
        combinatorial_segment(cycle(6), (0, 1), {3}, x=0)


def _segment_pairs():
    out = []
    for X in BARY3.facets[::3]:
        for Y in BARY3.facets[::2]:
            if not set(X) & set(Y):
                out.append((X, Y))
    return out


@pytest.mark.parametrize("X, Y", _segment_pairs())
def test_generated_segments_pass_checks(X, Y):
    builder = SegmentBuilder(BARY3)
    cert = builder.segment(BARY3, X, set(Y))
    assert is_segment(builder, BARY3, cert.path, set(Y), cert.anchor)
    assert segment_monotone_check(cert, builder)
    assert star_property_violation(cert) is None


def test_corrupted_segment_fails():
    builder = SegmentBuilder(BARY3)
    for X, Y in _segment_pairs():
        cert = builder.segment(BARY3, X, set(Y))
        if cert.length >= 3:
            break
    path = list(cert.path)
    path[1], path[2] = path[2], path[1]
    bad = replace(cert, path=tuple(path))
    check = segment_monotone_check(bad, builder)
    assert not check and check.failures


@settings(max_examples=40)
@given(st.integers(0, len(BARY4.facets) - 1), st.integers(0, len(BARY4.facets) - 1))
def test_random_pairs_in_barycentric_four_simplex(i, j):
    X, Y = BARY4.facets[i], BARY4.facets[j]
    res = NonRevisitingSolver(BARY4).solve(X, Y)
    assert oracles.is_non_revisiting(res.path.facets)
    assert res.path.length <= BARY4.n - BARY4.d
