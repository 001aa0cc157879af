from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given

from diameter_lab.complex_core import PureComplex, PureMulticomplex
from diameter_lab.constructions import complete_complex, simplex_boundary
from diameter_lab.diameter import (
    FacetPath,
    corridor_upper_bound,
    dual_diameter,
    dual_distance,
    hirsch_excess,
    is_induced_path,
    is_non_revisiting,
    johnson_adjacency,
    longest_induced_path_johnson,
    shortest_path,
)
from diameter_lab.errors import Disconnected, InvalidComplex, SizeLimit

import oracles
from strategies import multicomplexes, pure_complexes


def test_facet_path_validation():
    FacetPath([(0, 1), (1, 2), (2, 3)])
    with pytest.raises(InvalidComplex):
        FacetPath([(0, 1), (2, 3)])
    with pytest.raises(InvalidComplex):
        FacetPath([(0, 1), (1, 2), (0, 1)])


def test_distance_and_shortest_path():
    C = PureComplex.from_facets([[0, 1], [1, 2], [2, 3], [3, 4]])
    assert dual_distance(C, (0, 1), (3, 4)) == 3
    path = shortest_path(C, (0, 1), (3, 4))
    assert path[0] == (0, 1) and path[-1] == (3, 4) and len(path) == 4
    assert dual_diameter(C).diameter == 3


def test_disconnected_diameter_raises():
    C = PureComplex.from_facets([[0, 1], [2, 3]])
    with pytest.raises(Disconnected):
        dual_diameter(C)


@given(pure_complexes())
def test_diameter_matches_oracle(C):
    expected = oracles.dual_diameter(C.facets)
    if expected is None:
        with pytest.raises(Disconnected):
            dual_diameter(C)
    else:
        rep = dual_diameter(C)
        assert rep.diameter == expected
        a, b = rep.witness_pair
        assert dual_distance(C, a, b) == expected


@given(multicomplexes())
def test_multicomplex_diameter_is_symmetric(M):
    X, Y = M.facets[0], M.facets[-1]
    assert dual_distance(M, X, Y) == dual_distance(M, Y, X)


def test_simplex_boundary_diameter_one():
    for d in range(2, 6):
        assert dual_diameter(simplex_boundary(d)).diameter == 1


@pytest.mark.parametrize("path, ok", [
    ([(0, 1), (1, 2), (2, 3)], True),
    ([(0, 1), (1, 2), (0, 2)], False),
    ([(0, 1, 2), (1, 2, 3), (2, 3, 4), (3, 4, 5)], True),
    ([(0, 1, 2), (0, 2, 3), (2, 3, 4), (0, 2, 4)], False),
])
def test_non_revisiting_fixtures(path, ok):
    verdict, triple = is_non_revisiting(path)
    assert verdict is ok
    assert verdict == oracles.is_non_revisiting(path)
    if not ok:
        i, j, k = triple
        assert not set(path[i]) & set(path[k]) <= set(path[j])


def test_corridor_upper_bound_and_excess():
    assert corridor_upper_bound(13, 3) == (comb(13, 2) - 3) // 2
    assert hirsch_excess(8, 4, 5) == Fraction(1, 4)
    assert hirsch_excess(10, 5, 5) == 0
    with pytest.raises(ValueError):
        corridor_upper_bound(5, 1)


def test_johnson_adjacency_symmetric_difference():
    nodes, masks = johnson_adjacency(5, 2)
    for i, u in enumerate(nodes):
        for j, v in enumerate(nodes):
            assert bool(masks[i] >> j & 1) == (len(set(u) ^ set(v)) == 2)


def _johnson_cases():
    return [(n, d) for n in range(1, 16) for d in range(1, n + 1) if comb(n, d) <= 15]


@pytest.mark.parametrize("n, d", _johnson_cases())
def test_exact_induced_path_matches_oracle(n, d):
    res = longest_induced_path_johnson(n, d)
    assert res.exact
    assert res.length == oracles.longest_induced_path(*oracles.johnson_graph(n, d))
    nodes, masks = johnson_adjacency(n, d)
    index = {f: i for i, f in enumerate(nodes)}
    assert is_induced_path([index[f] for f in res.path], masks)


def test_exact_induced_path_j62_value():
    # J(6,2) is the triangular graph T6; its longest induced path has length 4
    assert longest_induced_path_johnson(6, 2).length == 4


def test_exact_induced_path_cap():
    with pytest.raises(SizeLimit):
        longest_induced_path_johnson(10, 4)


def test_exact_budget_returns_partial():
    res = longest_induced_path_johnson(7, 2, budget=5)
    assert res.budget_exhausted and not res.exact
    nodes, masks = johnson_adjacency(7, 2)
    index = {f: i for i, f in enumerate(nodes)}
    assert is_induced_path([index[f] for f in res.path], masks)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_heuristic_is_induced_and_deterministic(seed):
    a = longest_induced_path_johnson(8, 3, "heuristic", seed=seed, restarts=20)
    b = longest_induced_path_johnson(8, 3, "heuristic", seed=seed, restarts=20)
    assert a.path == b.path
    nodes, masks = johnson_adjacency(8, 3)
    index = {f: i for i, f in enumerate(nodes)}
    assert is_induced_path([index[f] for f in a.path], masks)


def test_heuristic_below_exact():
    exact = longest_induced_path_johnson(6, 3).length
    heur = longest_induced_path_johnson(6, 3, "heuristic", restarts=30).length
    assert heur <= exact


def test_induced_path_is_a_corridor_complex():
    from diameter_lab.complex_core import is_corridor

    res = longest_induced_path_johnson(6, 3)
    C = res.path.as_complex(6)
    assert is_corridor(C)
    assert dual_diameter(C).diameter == res.length


def test_complete_complex_diameter():
    assert dual_diameter(complete_complex(6, 3)).diameter == 3
    M = PureMulticomplex.from_facets([(2, 0), (1, 1), (0, 2)])
    assert dual_diameter(M).diameter == 2
