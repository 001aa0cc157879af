from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from diameter_lab.caps import get_cap
from diameter_lab.complex_core import (
    INF,
    PureComplex,
    PureMulticomplex,
    canonical_form,
    deletion,
    deletion_maximal_faces,
    dual_graph,
    f_count,
    faces,
    is_corridor,
    is_deletion_pure,
    is_flag,
    is_normal,
    is_pseudomanifold,
    is_strongly_connected,
    link,
    multiset_elements,
    multiset_intersection,
    multiset_union,
    multiset_vector,
    relabel,
    skeleton_graph,
    star,
    vertex_distance,
)
from diameter_lab.constructions import (
    barycentric_subdivision,
    complete_complex,
    octahedron_boundary,
    simplex_boundary,
    torus7,
)
from diameter_lab.errors import InvalidComplex, NotAFace, SizeLimit

import oracles
from strategies import multicomplexes, pure_complexes


def test_from_facets_sorts_and_infers():
    C = PureComplex.from_facets([[2, 1], [0, 1]])
    assert C.facets == ((0, 1), (1, 2))
    assert (C.n, C.d) == (3, 2)
    assert (2, 1) in C


@pytest.mark.parametrize("facets", [
    [[0, 1], [1, 0]],
    [[0, 0]],
    [[0, 1], [0, 1, 2]],
])
def test_invalid_facets_rejected(facets):
    with pytest.raises(InvalidComplex):
        PureComplex.from_facets(facets)


def test_vertex_outside_universe_rejected():
    with pytest.raises(InvalidComplex):
        PureComplex.from_facets([[0, 5]], n=3)


def test_unused_vertices_allowed():
    C = PureComplex.from_facets([[0, 1]], n=5)
    assert C.vertices == (0, 1)
    assert is_strongly_connected(C)


def test_multiset_helpers_roundtrip():
    vec = multiset_vector([0, 0, 2], 3)
    assert vec == (2, 0, 1)
    assert multiset_elements(vec) == (0, 0, 2)
    assert multiset_union((2, 0, 1), (1, 1, 0)) == (2, 1, 1)
    assert multiset_intersection((2, 0, 1), (1, 1, 0)) == (1, 0, 0)


def test_multicomplex_degree_checked():
    with pytest.raises(InvalidComplex):
        PureMulticomplex.from_facets([(2, 0), (1, 0)])
    M = PureMulticomplex.from_multisets([[0, 0], [0, 1]], n=2)
    assert M.facets == ((1, 1), (2, 0))


def test_faces_sorted_by_size_then_lex():
    C = PureComplex.from_facets([[0, 1, 2]])
    fs = faces(C, 1)
    assert fs[:3] == [(0,), (1,), (2,)]
    assert fs[-1] == (0, 1, 2)
    assert len(fs) == 7


def test_f_counts_of_simplex_boundary():
    C = simplex_boundary(3)
    assert [f_count(C, k) for k in range(3)] == [4, 6, 4]


def test_link_and_star():
    C = simplex_boundary(3)
    L = link(C, (0,))
    assert L.facets == ((1, 2), (1, 3), (2, 3))
    assert L.n == C.n
    assert len(star(C, (0, 1))) == 2
    with pytest.raises(NotAFace):
        link(C, (0, 1, 2, 3))


def test_multicomplex_link():
    M = PureMulticomplex.from_facets([(2, 0), (1, 1), (0, 2)])
    L = link(M, (1, 0))
    assert L.facets == ((0, 1), (1, 0))
    assert L.d == 1


def test_deletion_face_level():
    # two triangles sharing edge {1,2}; deleting vertex 0 leaves a triangle
    C = PureComplex.from_facets([[0, 1, 2], [1, 2, 3]])
    assert is_deletion_pure(C, (0,))
    assert deletion(C, (0,)).facets == ((1, 2, 3),)
    # deleting the shared edge leaves two dangling edges next to the triangles' other edges
    faces_left = deletion_maximal_faces(C, (1, 2))
    assert sorted(faces_left) == sorted([(0, 1), (0, 2), (1, 3), (2, 3)])
    assert not is_deletion_pure(C, (1, 2))


def test_deletion_of_whole_complex_is_not_pure():
    C = PureComplex.from_facets([[0, 1]])
    assert not is_deletion_pure(C, (0, 1))


def test_deletion_exposes_short_face():
    # path of edges 0-1-2: removing 1 leaves isolated points, removing 0 leaves edge 12
    C = PureComplex.from_facets([[0, 1], [1, 2]])
    assert not is_deletion_pure(C, (1,))
    assert is_deletion_pure(C, (0,))


@given(pure_complexes())
def test_dual_graph_matches_oracle(C):
    G = dual_graph(C)
    ref = oracles.dual_adjacency(C.facets)
    for i, f in enumerate(C.facets):
        assert {C.facets[j] for j in G.neighbors(i)} == ref[f]


@given(pure_complexes())
def test_dual_graph_symmetric_and_loopless(C):
    G = dual_graph(C)
    for i in range(len(G)):
        assert i not in G.neighbors(i)
        for j in G.neighbors(i):
            assert i in G.neighbors(j)


@given(pure_complexes(), st.randoms(use_true_random=False))
def test_relabel_preserves_dual_graph_size(C, rnd):
    perm = list(range(C.n))
    rnd.shuffle(perm)
    D = relabel(C, perm)
    assert len(dual_graph(D).edges()) == len(dual_graph(C).edges())
    assert is_strongly_connected(D) == is_strongly_connected(C)


@given(pure_complexes(max_n=5))
def test_canonical_form_matches_brute_force(C):
    canon, mapping = canonical_form(C)
    assert canon.facets == oracles.canonical_facets(C.facets, C.n)
    assert relabel(C, mapping).facets == canon.facets


@given(pure_complexes(max_n=6), st.randoms(use_true_random=False))
def test_canonical_form_is_relabeling_invariant(C, rnd):
    perm = list(range(C.n))
    rnd.shuffle(perm)
    assert canonical_form(relabel(C, perm))[0] == canonical_form(C)[0]


def test_canonical_form_cap():
    C = PureComplex.from_facets([[0, 1]], n=get_cap("canonical_n") + 1)
    with pytest.raises(SizeLimit):
        canonical_form(C)


def test_caps_override(monkeypatch):
    monkeypatch.setenv("DIAMETER_LAB_CAPS", '{"canonical_n": 30}')
    C = PureComplex.from_facets([[0, 1]], n=20)
    canonical_form(C)


@given(pure_complexes())
def test_link_facets_are_facet_differences(C):
    v = C.facets[0][0]
    L = link(C, (v,))
    assert set(L.facets) == {tuple(u for u in X if u != v) for X in C.facets if v in X}
    assert L.d == C.d - 1


@given(pure_complexes(max_n=6))
def test_flag_matches_oracle(C):
    assert is_flag(C) == oracles.is_flag(C.facets)


@pytest.mark.parametrize("C, expected", [
    (simplex_boundary(2), False),
    (simplex_boundary(3), False),
    (octahedron_boundary(), True),
    (PureComplex.from_facets([(i, (i + 1) % 6) for i in range(6)]), True),
])
def test_flag_fixtures(C, expected):
    assert is_flag(C) is expected


def test_barycentric_subdivisions_are_flag_and_normal():
    for d in (2, 3):
        B, labels = barycentric_subdivision(simplex_boundary(d))
        assert is_flag(B) and is_normal(B)
        assert len(labels) == B.n


def test_normality():
    assert is_normal(simplex_boundary(3))
    assert is_normal(torus7())
    # two triangles glued at a vertex: strongly connected fails already
    assert not is_normal(PureComplex.from_facets([[0, 1, 2], [0, 3, 4]]))
    # bowtie of two tetrahedron boundaries sharing a vertex: link of that vertex is disconnected
    a = [f for f in combinations(range(4), 3)]
    b = [tuple(sorted({0, 4, 5, 6} - {v})) for v in (4, 5, 6, 0)]
    bowtie = PureComplex.from_facets(a + b)
    assert not is_normal(bowtie)


def test_pseudomanifold_and_corridor():
    assert is_pseudomanifold(simplex_boundary(3))
    assert not is_corridor(simplex_boundary(3))
    path = PureComplex.from_facets([[0, 1], [1, 2], [2, 3]])
    assert is_corridor(path)
    star_like = PureComplex.from_facets([[0, 1], [0, 2], [0, 3]])
    assert not is_pseudomanifold(PureComplex.from_facets([[0, 1, 2], [0, 1, 3], [0, 1, 4]]))
    assert not is_corridor(star_like)


def test_vertex_distance():
    C = PureComplex.from_facets([[0, 1], [1, 2], [2, 3], [4, 5]])
    assert vertex_distance(C, {0}, {3}) == 3
    assert vertex_distance(C, {0, 2}, {2}) == 0
    assert vertex_distance(C, {0}, {5}) == INF


@given(pure_complexes())
def test_skeleton_graph_edges_come_from_facets(C):
    adj = skeleton_graph(C)
    for u, nbrs in adj.items():
        for w in nbrs:
            assert any(u in X and w in X for X in C.facets)


@given(multicomplexes())
def test_multicomplex_faces_divide_facets(M):
    for S in faces(M, 1):
        assert any(all(x >= s for x, s in zip(X, S)) for X in M.facets)


def test_complete_complex_counts():
    assert len(complete_complex(6, 3)) == 20
    rng = random.Random(1)
    n = rng.randint(4, 7)
    assert is_strongly_connected(complete_complex(n, 2))
