"""Explicit complexes: complete complexes, long 2-dimensional corridors, joins,
induced paths in grid graphs, iterated-join corridors, the polar fractional
hypersimplices and barycentric subdivisions."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .caps import check_cap
from .complex_core import PureComplex, dual_graph, faces
from .errors import TooSmall


def complete_complex(n: int, d: int) -> PureComplex:
    """All ``d``-subsets of ``range(n)``; its dual graph is J(n, d)."""
    if not 0 <= d <= n:
        raise ValueError("need 0 <= d <= n")
    return PureComplex(n, d, tuple(combinations(range(n), d)))


def simplex_boundary(d: int) -> PureComplex:
    """Boundary of the ``d``-simplex: all ``d``-subsets of ``d + 1`` vertices."""
    return complete_complex(d + 1, d)


@dataclass(frozen=True)
class HamiltonianDecomposition:
    k: int
    cycles: tuple

    def edge_sets(self) -> list:
        return [{frozenset((c[i], c[(i + 1) % len(c)])) for i in range(len(c))}
                for c in self.cycles]


def hamiltonian_decomposition(k: int) -> HamiltonianDecomposition:
    """Split K_{2k+1} into ``k`` Hamiltonian cycles.

    Vertex ``2k`` is the hub; the others sit on a circle labeled mod ``2k``.
    The base cycle is ``hub, 0, 1, 2k-1, 2, 2k-2, ..., k, hub`` and cycle ``r``
    adds ``r`` to every circle label.
    """
    if k < 1:
        raise ValueError("k must be positive")
    m = 2 * k
    zigzag = [0]
    for step in range(1, k + 1):
        zigzag.append(step)
        if step < k:
            zigzag.append(m - step)
    cycles = []
    for r in range(k):
        cycles.append(tuple([m] + [(v + r) % m for v in zigzag]))
    return HamiltonianDecomposition(k, tuple(cycles))


def _open_cycle(cycle, start):
    """Hamiltonian path obtained from ``cycle`` by deleting the smallest edge at ``start``."""
    L = len(cycle)
    i = cycle.index(start)
    prev_v, next_v = cycle[i - 1], cycle[(i + 1) % L]
    removed = min(tuple(sorted((start, prev_v))), tuple(sorted((start, next_v))))
    other = removed[0] if removed[1] == start else removed[1]
    # walk away from the deleted edge
    step = 1 if other == prev_v else -1
    return [cycle[(i + step * t) % L] for t in range(L)]


def corridor_walk(k: int) -> list:
    """``k`` vertex-simple sections of length ``2k`` chained end to start.

    The first cycle loses its lexicographically smallest edge ``(i0, i1)``;
    every later cycle loses the smaller of its two edges at the previous
    junction vertex.
    """
    dec = hamiltonian_decomposition(k)
    first = dec.cycles[0]
    L = len(first)
    edges = sorted(tuple(sorted((first[i], first[(i + 1) % L]))) for i in range(L))
    i0, i1 = edges[0]
    # section 0 runs from i0 to i1 along the cycle without edge i0 i1
    pos = first.index(i0)
    step = -1 if first[(pos + 1) % L] == i1 else 1
    sections = [[first[(pos + step * t) % L] for t in range(L)]]
    for cycle in dec.cycles[1:]:
        sections.append(_open_cycle(cycle, sections[-1][-1]))
    return sections


def corridor_2complex(n: int) -> PureComplex:
    """A 2-dimensional corridor on ``n`` vertices of length ``2k^2 + k - 2``,
    ``k = (n - 1) // 3``.

    Vertices ``0..2k`` carry the walk from :func:`corridor_walk`; section ``t``
    is coned from apex ``2k + 1 + t`` and consecutive sections are glued by the
    triangle ``{junction, apex_t, apex_{t+1}}``.  Any vertices beyond ``3k + 1``
    are left unused.
    """
    if n < 7:
        raise TooSmall("the corridor construction needs n >= 7")
    k = (n - 1) // 3
    apexes = [2 * k + 1 + t for t in range(k)]
    facets = []
    for t, section in enumerate(corridor_walk(k)):
        if t > 0:
            facets.append(tuple(sorted((section[0], apexes[t - 1], apexes[t]))))
        for a, b in zip(section, section[1:]):
            facets.append(tuple(sorted((a, b, apexes[t]))))
    return PureComplex.from_facets(facets, n=n, d=3)


def corridor_order(C: PureComplex) -> tuple:
    """Facets of a corridor listed from one end of its dual path to the other.

    The end with the smaller facet comes first.
    """
    G = dual_graph(C)
    if len(G) == 1:
        return C.facets
    ends = [i for i in range(len(G)) if G.degree(i) == 1]
    order = [min(ends)]
    prev = -1
    while len(order) < len(G):
        nxt = [j for j in G.neighbors(order[-1]) if j != prev]
        prev = order[-1]
        order.append(nxt[0])
    return tuple(C.facets[i] for i in order)


def join(C1: PureComplex, C2: PureComplex) -> PureComplex:
    """``{X1 | X2}`` with the vertices of ``C2`` shifted by ``C1.n``."""
    check_cap("join_facets", len(C1) * len(C2), "join facet count")
    shift = C1.n
    facets = [X1 + tuple(v + shift for v in X2) for X1 in C1.facets for X2 in C2.facets]
    return PureComplex(C1.n + C2.n, C1.d + C2.d, tuple(sorted(facets)))


def _vertical_path(l1, l2):
    path = []
    cols = list(range(0, l1 + 1, 2))
    for c, i in enumerate(cols):
        rows = range(l2 + 1) if c % 2 == 0 else range(l2, -1, -1)
        if c > 0:
            path.append((i - 1, path[-1][1]))
        path.extend((i, j) for j in rows)
    if l1 % 2 == 1:
        path.append((l1, path[-1][1]))
    return path


def _zigzag_path(l1, l2):
    """Snake through diagonal bands ``{c, c+1}`` (``c = i - j``), skipping
    every third diagonal and crossing it once at alternating ends.

    All three band offsets and both starting ends are tried, each followed by
    a local detour pass; the longest result wins (first found on ties).
    """
    best = []
    for offset in range(3):
        for first_high in (True, False):
            path = _zigzag_variant(l1, l2, -l2 - offset, first_high)
            path = _lengthen_by_detours(path, l1, l2)
            if len(path) > len(best):
                best = path
    return best


def _grid_neighbors(p, l1, l2):
    i, j = p
    for q in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)):
        if 0 <= q[0] <= l1 and 0 <= q[1] <= l2:
            yield q


def _lengthen_by_detours(path, l1, l2, window=6, extra=2):
    """Replace short subpaths by longer induced detours until none is found.

    Segments ``path[i..i+w]`` are scanned left to right and rerouted through
    free cells by a bounded DFS.  The path is also allowed to grow past its
    last cell; running the pass on the reversed path covers the first cell.
    """
    path = list(path)
    for _ in range(2):
        changed = True
        while changed:
            changed = False
            for i in range(len(path)):
                # inside the path, w >= 2 so that path[i] and path[j] are not grid neighbours
                for w in range(1, window + 1):
                    j = i + w
                    if j > len(path):
                        break
                    if w == 1 and j < len(path):
                        continue
                    detour = _find_detour(path, i, j, w - 1 + extra, l1, l2)
                    if detour is not None and len(detour) > w - 1:
                        path = path[:i + 1] + detour + path[j:]
                        changed = True
                        break
                if changed:
                    break
        path.reverse()
    return path


def _find_detour(path, i, j, max_len, l1, l2):
    """Longest route of free cells from ``path[i]`` to ``path[j]`` (exclusive)
    keeping the whole path induced; ``j == len(path)`` means an open end."""
    keep = set(path[:i + 1] + path[j:])
    start = path[i]
    end = path[j] if j < len(path) else None
    best = None

    def dfs(route):
        nonlocal best
        tail = route[-1] if route else start
        if end is None or end in _grid_neighbors(tail, l1, l2):
            if best is None or len(route) > len(best):
                best = list(route)
            if route and end is not None:
                return
        if len(route) >= max_len:
            return
        for q in _grid_neighbors(tail, l1, l2):
            if q in keep or q in route:
                continue
            near = set(_grid_neighbors(q, l1, l2))
            if any(r in near for r in route[:-1]):
                continue
            if any(r in keep and r != tail and r != end for r in near):
                continue
            route.append(q)
            dfs(route)
            route.pop()

    dfs([])
    return best


def _zigzag_variant(l1, l2, c_start, first_high):
    def diag(c):
        return [(j + c, j) for j in range(l2 + 1) if 0 <= j + c <= l1]

    def band(c):
        return sorted(diag(c) + diag(c + 1), key=lambda p: p[0] + p[1])

    bands = []
    c = c_start
    while c <= l1:
        if band(c):
            bands.append((c, band(c)))
        c += 3
    kept = [list(bands[0][1])]
    connectors = []
    for m in range(1, len(bands)):
        sep = diag(bands[m - 1][0] + 2)
        if not sep:
            break
        high_end = (m % 2 == 1) == first_high
        v = max(sep, key=lambda p: p[0] + p[1]) if high_end else min(sep, key=lambda p: p[0] + p[1])
        s = v[0] + v[1]
        prev = [p for p in kept[-1] if (p[0] + p[1] < s if high_end else p[0] + p[1] > s)]
        cur = [p for p in bands[m][1] if (p[0] + p[1] < s if high_end else p[0] + p[1] > s)]
        if not prev or not cur:
            break
        kept[-1] = prev
        connectors.append(v)
        kept.append(cur)
    path = []
    for m, pts in enumerate(kept):
        if m > 0:
            path.append(connectors[m - 1])
        path.extend(pts if (m % 2 == 0) == first_high else reversed(pts))
    return path


def product_induced_path(l1: int, l2: int, strategy: str = "vertical") -> list:
    """An induced path in the grid ``P_{l1} x P_{l2}`` as ``(i, j)`` pairs.

    ``vertical`` uses every second column ``{i} x P_{l2}`` linked by length-two
    horizontal steps at alternating ends; its length is
    ``(l1 // 2 + 1) * l2 + l1``.  ``zigzag`` follows staircases along pairs of
    diagonals and uses about two thirds of the grid.
    """
    if l1 < 1 or l2 < 1:
        raise ValueError("both path lengths must be positive")
    if strategy == "vertical":
        return _vertical_path(l1, l2)
    if strategy == "zigzag":
        return _zigzag_path(l1, l2)
    raise ValueError(f"unknown strategy {strategy!r}")


def grid_adjacent(p, q) -> bool:
    return abs(p[0] - q[0]) + abs(p[1] - q[1]) == 1


def join_corridor(C1: PureComplex, C2: PureComplex, strategy: str = "vertical") -> PureComplex:
    """The sub-corridor of ``C1 * C2`` picked out by an induced grid path."""
    o1, o2 = corridor_order(C1), corridor_order(C2)
    shift = C1.n
    cells = product_induced_path(len(o1) - 1, len(o2) - 1, strategy)
    facets = [o1[i] + tuple(v + shift for v in o2[j]) for i, j in cells]
    return PureComplex.from_facets(facets, n=C1.n + C2.n, d=C1.d + C2.d)


def base_corridor(n: int, d: int) -> PureComplex:
    """A long corridor to seed iterated joins."""
    if d == 3 and n >= 7:
        return corridor_2complex(n)
    from .diameter import longest_induced_path_johnson

    res = longest_induced_path_johnson(n, d, mode="exact" if _small(n, d) else "heuristic")
    return PureComplex.from_facets(res.path.facets, n=n, d=d)


def _small(n, d):
    from math import comb

    return comb(n, d) <= 20


def iterated_join_corridor(n: int, d: int, k: int, base: PureComplex | None = None,
                           strategy: str = "vertical") -> PureComplex:
    """A corridor of rank ``k*d`` on ``k*n`` vertices from ``k`` copies of a base.

    Each round joins the current corridor with the base and keeps the facets
    along an induced grid path, so with base length ``H`` the length after
    ``k`` rounds is at least ``H^k / 2^(k-1)``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if base is None:
        base = base_corridor(n, d)
    if base.n != n or base.d != d:
        raise ValueError("base corridor must have the requested n and d")
    current = base
    for _ in range(k - 1):
        check_cap("join_facets", len(current) * len(base), "join facet count")
        current = join_corridor(current, base, strategy)
    return current


def nabla(a: int, b: int) -> PureComplex:
    """Boundary complex of the polar of the fractional hypersimplex.

    Vertex ``+i`` is encoded as ``2(i-1)`` and ``-i`` as ``2(i-1)+1`` for
    ``i = 1..a+b+1``.  Facets are ``{+i : i in S} | {-j : j in T}`` with
    ``S``, ``T`` disjoint, ``|S| = a`` and ``|T| = b``.
    """
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    m = a + b + 1
    facets = []
    for S in combinations(range(1, m + 1), a):
        rest = [j for j in range(1, m + 1) if j not in S]
        for T in combinations(rest, b):
            facets.append([nabla_vertex(+i) for i in S] + [nabla_vertex(-j) for j in T])
    return PureComplex.from_facets(facets, n=2 * m, d=a + b)


def nabla_vertex(signed: int) -> int:
    """``+i -> 2(i-1)``, ``-i -> 2(i-1)+1``."""
    if signed == 0:
        raise ValueError("signed labels start at 1")
    return 2 * (abs(signed) - 1) + (1 if signed < 0 else 0)


def nabla_label(v: int) -> int:
    i = v // 2 + 1
    return -i if v % 2 else i


def barycentric_subdivision(C: PureComplex) -> tuple:
    """Vertices are the nonempty faces of ``C``; facets are maximal chains.

    Returns ``(subdivision, face_of_vertex)``; new vertex ``v`` stands for
    ``face_of_vertex[v]``.  Faces are numbered by size, then lexicographically.
    """
    all_faces = faces(C, 1, C.d)
    label = {F: i for i, F in enumerate(all_faces)}
    facets = set()
    for X in C.facets:
        for order in permutations(X):
            chain = [label[tuple(sorted(order[:t]))] for t in range(1, len(order) + 1)]
            facets.add(tuple(sorted(chain)))
    return PureComplex(len(all_faces), C.d, tuple(sorted(facets))), tuple(all_faces)


def octahedron_boundary() -> PureComplex:
    """Boundary of the cross-polytope in dimension 3 (vertices ``i`` and ``i+3`` opposite)."""
    facets = []
    for signs in range(8):
        facets.append([i + 3 * (signs >> i & 1) for i in range(3)])
    return PureComplex.from_facets(facets, n=6, d=3)


def torus7() -> PureComplex:
    """The 7-vertex triangulated torus."""
    facets = []
    for i in range(7):
        facets.append([i, (i + 1) % 7, (i + 3) % 7])
        facets.append([i, (i + 2) % 7, (i + 3) % 7])
    return PureComplex.from_facets(facets, n=7, d=3)
