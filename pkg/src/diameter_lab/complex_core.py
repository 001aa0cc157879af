"""Pure simplicial complexes and multicomplexes stored by their facet lists.

A :class:`PureComplex` on the vertex universe ``range(n)`` keeps its facets as
strictly increasing ``d``-tuples, sorted lexicographically.  A
:class:`PureMulticomplex` keeps each facet as a dense exponent vector of length
``n`` whose entries sum to ``d`` (a degree-``d`` monomial).  Lower faces are
never stored; every operation derives them from the facets on demand.

Faces of a multicomplex are the multisets dividing at least one facet.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from .caps import check_cap
from .errors import InvalidComplex, NotAFace

INF = float("inf")


@dataclass(frozen=True)
class PureComplex:
    """A pure ``(d-1)``-dimensional complex on the vertices ``0..n-1``."""

    n: int
    d: int
    facets: tuple

    def __post_init__(self):
        if self.n < 0 or self.d < 0:
            raise InvalidComplex("n and d must be non-negative")
        prev = None
        for f in self.facets:
            if len(f) != self.d:
                raise InvalidComplex(f"facet {f} does not have {self.d} vertices")
            if any(b <= a for a, b in zip(f, f[1:])):
                raise InvalidComplex(f"facet {f} is not strictly increasing")
            if f and (f[0] < 0 or f[-1] >= self.n):
                raise InvalidComplex(f"facet {f} has a vertex outside range({self.n})")
            if prev is not None and f <= prev:
                raise InvalidComplex("facet list must be sorted and duplicate-free")
            prev = f

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]], n: int | None = None,
                    d: int | None = None) -> "PureComplex":
        """Normalize facet order; duplicates are rejected, not merged."""
        fs = [tuple(sorted(f)) for f in facets]
        for f in fs:
            if len(set(f)) != len(f):
                raise InvalidComplex(f"facet {f} repeats a vertex")
        if len(set(fs)) != len(fs):
            raise InvalidComplex("duplicate facet")
        if d is None:
            if not fs:
                raise InvalidComplex("cannot infer d from an empty facet list")
            d = len(fs[0])
        if n is None:
            n = 1 + max((v for f in fs for v in f), default=-1)
        return cls(n, d, tuple(sorted(fs)))

    def __len__(self):
        return len(self.facets)

    def __iter__(self):
        return iter(self.facets)

    def __contains__(self, facet):
        return tuple(sorted(facet)) in self.index

    @cached_property
    def index(self) -> dict:
        return {f: i for i, f in enumerate(self.facets)}

    @cached_property
    def vertices(self) -> tuple:
        """Vertices that lie in at least one facet."""
        return tuple(sorted({v for f in self.facets for v in f}))


@dataclass(frozen=True)
class PureMulticomplex:
    """A pure multicomplex of rank ``d``; each facet is an exponent vector."""

    n: int
    d: int
    facets: tuple

    def __post_init__(self):
        prev = None
        for f in self.facets:
            if len(f) != self.n:
                raise InvalidComplex(f"exponent vector {f} does not have length {self.n}")
            if any(e < 0 for e in f):
                raise InvalidComplex(f"negative exponent in {f}")
            if sum(f) != self.d:
                raise InvalidComplex(f"multiset {f} does not have degree {self.d}")
            if prev is not None and f <= prev:
                raise InvalidComplex("facet list must be sorted and duplicate-free")
            prev = f

    @classmethod
    def from_facets(cls, facets: Iterable[Sequence[int]], n: int | None = None,
                    d: int | None = None) -> "PureMulticomplex":
        fs = [tuple(int(e) for e in f) for f in facets]
        if len(set(fs)) != len(fs):
            raise InvalidComplex("duplicate facet")
        if n is None:
            if not fs:
                raise InvalidComplex("cannot infer n from an empty facet list")
            n = len(fs[0])
        if d is None:
            if not fs:
                raise InvalidComplex("cannot infer d from an empty facet list")
            d = sum(fs[0])
        return cls(n, d, tuple(sorted(fs)))

    @classmethod
    def from_multisets(cls, multisets: Iterable[Iterable[int]], n: int) -> "PureMulticomplex":
        """Build from element lists, e.g. ``[[0, 0, 1], [0, 1, 1]]``."""
        return cls.from_facets([multiset_vector(m, n) for m in multisets], n=n)

    def __len__(self):
        return len(self.facets)

    def __iter__(self):
        return iter(self.facets)

    def __contains__(self, facet):
        return tuple(facet) in self.index

    @cached_property
    def index(self) -> dict:
        return {f: i for i, f in enumerate(self.facets)}

    @cached_property
    def vertices(self) -> tuple:
        return tuple(i for i in range(self.n) if any(f[i] for f in self.facets))


AnyComplex = PureComplex | PureMulticomplex


def multiset_vector(elements: Iterable[int], n: int) -> tuple:
    vec = [0] * n
    for e in elements:
        vec[e] += 1
    return tuple(vec)


def multiset_elements(vec: Sequence[int]) -> tuple:
    """Inverse of :func:`multiset_vector`: ``(2, 1, 0) -> (0, 0, 1)``."""
    return tuple(i for i, e in enumerate(vec) for _ in range(e))


def multiset_union(a: Sequence[int], b: Sequence[int]) -> tuple:
    """Componentwise max (the lcm of the monomials)."""
    return tuple(max(x, y) for x, y in zip(a, b))


def multiset_intersection(a: Sequence[int], b: Sequence[int]) -> tuple:
    """Componentwise min (the gcd of the monomials)."""
    return tuple(min(x, y) for x, y in zip(a, b))


# --- face-level helpers shared by both kinds ---------------------------------

def _is_multi(C) -> bool:
    return isinstance(C, PureMulticomplex)


def normalize_face(C: AnyComplex, S) -> tuple:
    if _is_multi(C):
        S = tuple(S) if S is not None else (0,) * C.n
        if len(S) != C.n:
            raise ValueError(f"face {S} is not an exponent vector of length {C.n}")
        return S
    return tuple(sorted(set(S)))


def face_size(C: AnyComplex, S) -> int:
    return sum(S) if _is_multi(C) else len(S)


def contains(C: AnyComplex, X, S) -> bool:
    if _is_multi(C):
        return all(x >= s for x, s in zip(X, S))
    return set(S).issubset(X)


def _remove(C: AnyComplex, X, S) -> tuple:
    if _is_multi(C):
        return tuple(x - s for x, s in zip(X, S))
    s = set(S)
    return tuple(v for v in X if v not in s)


def _ridges(C: AnyComplex, X):
    """Yield the codimension-one faces of facet ``X`` (without repetition)."""
    if _is_multi(C):
        for i, e in enumerate(X):
            if e:
                yield X[:i] + (e - 1,) + X[i + 1:]
    else:
        for i in range(len(X)):
            yield X[:i] + X[i + 1:]


def faces_of_facet(C: AnyComplex, X, min_size: int = 0, max_size: int | None = None):
    """All faces of one facet with ``min_size <= |face| <= max_size``."""
    if max_size is None:
        max_size = C.d
    if _is_multi(C):
        out = []

        def rec(i, acc, size):
            if i == len(X):
                if min_size <= size <= max_size:
                    out.append(tuple(acc))
                return
            for e in range(min(X[i], max_size - size) + 1):
                acc.append(e)
                rec(i + 1, acc, size + e)
                acc.pop()

        rec(0, [], 0)
        return out
    return [c for k in range(min_size, min(max_size, len(X)) + 1) for c in combinations(X, k)]


def faces(C: AnyComplex, min_size: int = 0, max_size: int | None = None) -> list:
    """Distinct faces of ``C`` in sorted order."""
    seen = set()
    for X in C.facets:
        seen.update(faces_of_facet(C, X, min_size, max_size))
    if _is_multi(C):
        return sorted(seen)
    return sorted(seen, key=lambda f: (len(f), f))


def f_count(C: PureComplex, k: int) -> int:
    """Number of distinct ``k``-dimensional faces (``k + 1`` vertices)."""
    return len({c for X in C.facets for c in combinations(X, k + 1)})


def _with_facets(C: AnyComplex, facets, d: int):
    if _is_multi(C):
        return PureMulticomplex.from_facets(facets, n=C.n, d=d)
    return PureComplex.from_facets(facets, n=C.n, d=d)


def link(C: AnyComplex, S) -> AnyComplex:
    """``lk_C(S) = {X - S : S <= X in C}`` on the same vertex universe."""
    S = normalize_face(C, S)
    members = [X for X in C.facets if contains(C, X, S)]
    if not members:
        raise NotAFace(f"{S} is contained in no facet")
    return _with_facets(C, [_remove(C, X, S) for X in members], C.d - face_size(C, S))


def star(C: AnyComplex, S) -> AnyComplex:
    S = normalize_face(C, S)
    members = [X for X in C.facets if contains(C, X, S)]
    if not members:
        raise NotAFace(f"{S} is contained in no facet")
    return _with_facets(C, members, C.d)


def deletion_maximal_faces(C: PureComplex, S) -> list:
    """Maximal faces of the antistar ``{F : F face of C, S not <= F}``.

    Surviving facets are kept; a removed facet ``X`` contributes its ridges
    ``X - {s}`` (``s`` in ``S``) that no surviving facet covers.
    """
    S = tuple(sorted(set(S)))
    if not S:
        return []
    s = set(S)
    surviving = [X for X in C.facets if not s.issubset(X)]
    surviving_sets = [set(X) for X in surviving]
    extra = set()
    for X in C.facets:
        if s.issubset(X):
            for v in S:
                R = tuple(u for u in X if u != v)
                if not any(set(R) <= Y for Y in surviving_sets):
                    extra.add(R)
    # ridges of one size cannot contain each other, but a ridge may sit in another ridge's facet
    extra = {R for R in extra if not any(set(R) < set(Q) for Q in extra)}
    return sorted(surviving) + sorted(extra)


def is_deletion_pure(C: PureComplex, S) -> bool:
    faces_left = deletion_maximal_faces(C, S)
    return bool(faces_left) and all(len(F) == C.d for F in faces_left)


def deletion(C: PureComplex, S) -> PureComplex:
    """Facets not containing ``S``; only meaningful when the deletion is pure."""
    s = set(S)
    return PureComplex(C.n, C.d, tuple(X for X in C.facets if not s.issubset(X)))


# --- graphs ------------------------------------------------------------------

@dataclass(frozen=True)
class DualGraph:
    """Adjacency graph on facets; node ``i`` is ``facets[i]``."""

    facets: tuple
    adjacency: tuple

    def __len__(self):
        return len(self.facets)

    def neighbors(self, i: int) -> tuple:
        return self.adjacency[i]

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def edges(self) -> list:
        return [(i, j) for i, nbrs in enumerate(self.adjacency) for j in nbrs if i < j]

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(range(len(self.facets)))
        G.add_edges_from(self.edges())
        return G

    def bfs(self, source: int) -> list:
        dist = [-1] * len(self.facets)
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist


def dual_graph(C: AnyComplex) -> DualGraph:
    """Facets are adjacent iff they share a ridge."""
    by_ridge = defaultdict(list)
    for i, X in enumerate(C.facets):
        for R in _ridges(C, X):
            by_ridge[R].append(i)
    adj = [set() for _ in C.facets]
    for members in by_ridge.values():
        for a, b in combinations(members, 2):
            adj[a].add(b)
            adj[b].add(a)
    return DualGraph(C.facets, tuple(tuple(sorted(s)) for s in adj))


def _connected(G: DualGraph) -> bool:
    if not G.facets:
        return False
    return min(G.bfs(0)) >= 0


def is_strongly_connected(C: AnyComplex) -> bool:
    return _connected(dual_graph(C))


def is_normal(C: AnyComplex) -> bool:
    """Strongly connected, and so is the link of every nonempty face.

    Links of faces with at least ``d - 1`` elements are a single facet or a set
    of points, hence always strongly connected; they are skipped.
    """
    if not is_strongly_connected(C):
        return False
    for S in faces(C, 1, C.d - 2):
        if not is_strongly_connected(link(C, S)):
            return False
    return True


def skeleton_graph(C: AnyComplex) -> dict:
    """Adjacency sets of the 1-skeleton (vertices of ``C`` and its edges)."""
    adj = {v: set() for v in C.vertices}
    for X in C.facets:
        support = multiset_support(X) if _is_multi(C) else X
        for a, b in combinations(support, 2):
            adj[a].add(b)
            adj[b].add(a)
    return adj


def multiset_support(vec: Sequence[int]) -> tuple:
    return tuple(i for i, e in enumerate(vec) if e)


def is_flag(C: PureComplex) -> bool:
    """Every clique of the 1-skeleton is a face.

    Cliques come out of :func:`networkx.enumerate_all_cliques` by increasing
    size, so the scan stops at the first clique that is not a face; a clique
    with more than ``d`` vertices is never a face.
    """
    check_cap("flag_n", C.n, "n")
    face_set = {frozenset(c) for X in C.facets for k in range(3, C.d + 1)
                for c in combinations(X, k)}
    G = nx.Graph()
    for v, nbrs in skeleton_graph(C).items():
        G.add_node(v)
        G.add_edges_from((v, w) for w in nbrs)
    for clique in nx.enumerate_all_cliques(G):
        if len(clique) < 3:
            continue
        if len(clique) > C.d or frozenset(clique) not in face_set:
            return False
    return True


def is_pseudomanifold(C: AnyComplex) -> bool:
    count = defaultdict(int)
    for X in C.facets:
        for R in _ridges(C, X):
            count[R] += 1
    return all(c <= 2 for c in count.values())


def is_corridor(C: AnyComplex) -> bool:
    G = dual_graph(C)
    m = len(G)
    if m == 0:
        return False
    if m == 1:
        return True
    degrees = sorted(G.degree(i) for i in range(m))
    return (degrees[:2] == [1, 1] and all(x == 2 for x in degrees[2:])
            and _connected(G))


def vertex_distance(C: AnyComplex, S: Iterable[int], T: Iterable[int]) -> float:
    """Minimum 1-skeleton distance between a vertex of ``S`` and one of ``T``."""
    S, T = set(S), set(T)
    if not S or not T:
        raise ValueError("vertex sets must be nonempty")
    if S & T:
        return 0
    adj = skeleton_graph(C)
    frontier = [s for s in S if s in adj]
    dist = {s: 0 for s in frontier}
    queue = deque(frontier)
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                if w in T:
                    return dist[w]
                queue.append(w)
    return INF


# --- relabeling and canonical forms -------------------------------------------

def relabel(C: PureComplex, mapping: Sequence[int], n: int | None = None) -> PureComplex:
    """Apply ``v -> mapping[v]`` to every vertex."""
    return PureComplex.from_facets([[mapping[v] for v in X] for X in C.facets],
                                   n=C.n if n is None else n, d=C.d)


def _prefix_key(facets, label, m, n):
    """Sort key of the part of the final facet list fixed by a partial labeling.

    ``label`` maps the first ``m`` chosen vertices to ``0..m-1``.  Facets whose
    known labels differ are ordered already; the flattened list is fixed up to
    the first facet that still has unlabeled vertices, of which only the known
    labels are fixed.  A longer fixed prefix always wins a tie on the common
    part, which the trailing sentinel ``n`` encodes.
    """
    rows = []
    for X in facets:
        known = sorted(label[v] for v in X if v in label)
        complete = len(known) == len(X)
        rows.append((tuple(known) if complete else tuple(known) + (m,), complete, known))
    rows.sort(key=lambda r: r[0])
    flat = []
    for _, complete, known in rows:
        flat.extend(known)
        if not complete:
            break
    return tuple(flat) + (n,)


def canonical_form(C: PureComplex) -> tuple:
    """Lexicographically least facet list over all vertex relabelings.

    Returns ``(canonical_complex, relabeling)`` where ``relabeling[v]`` is the
    new label of vertex ``v``.  Labels ``0, 1, ...`` are assigned one at a
    time; only partial labelings whose already-fixed prefix of the final list
    is minimal survive to the next level, which is exact because every
    completion of a worse prefix is worse.

    Vertices in no facet get the largest labels, in increasing order: an
    order-preserving compression of the used labels never makes the list
    larger, and unused vertices are interchangeable.
    """
    check_cap("canonical_n", C.n, "n")
    n = C.n
    used = C.vertices
    unused = [v for v in range(n) if v not in set(used)]
    frontier = [()]
    for m in range(len(used)):
        best_key = None
        nxt = []
        for order in frontier:
            label = {v: i for i, v in enumerate(order)}
            label_m = dict(label)
            for v in used:
                if v in label:
                    continue
                label_m[v] = m
                key = _prefix_key(C.facets, label_m, m + 1, n)
                del label_m[v]
                if best_key is None or key < best_key:
                    best_key, nxt = key, [order + (v,)]
                elif key == best_key:
                    nxt.append(order + (v,))
        check_cap("canonical_frontier", len(nxt), "canonical-form frontier")
        frontier = nxt
    best = None
    for order in frontier:
        mapping = [0] * n
        for i, v in enumerate(tuple(order) + tuple(unused)):
            mapping[v] = i
        image = tuple(sorted(tuple(sorted(mapping[v] for v in X)) for X in C.facets))
        if best is None or image < best[0]:
            best = (image, tuple(mapping))
    if best is None:
        return PureComplex(n, C.d, ()), ()
    return PureComplex(n, C.d, best[0]), best[1]
