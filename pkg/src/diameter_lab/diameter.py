"""Dual distances, diameters, non-revisiting checks and induced paths in J(n, d)."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .caps import check_cap
from .complex_core import INF, AnyComplex, PureComplex, _is_multi, dual_graph
from .errors import BudgetExceeded, Disconnected, InvalidComplex


@dataclass(frozen=True)
class FacetPath:
    """Facets consecutive in the dual graph, none repeated."""

    facets: tuple

    def __post_init__(self):
        object.__setattr__(self, "facets", tuple(tuple(f) for f in self.facets))
        if len(set(self.facets)) != len(self.facets):
            raise InvalidComplex("a facet path may not repeat a facet")
        for a, b in zip(self.facets, self.facets[1:]):
            if not _differ_by_one(a, b):
                raise InvalidComplex(f"{a} and {b} are not adjacent")

    @property
    def length(self) -> int:
        return len(self.facets) - 1

    def __len__(self):
        return len(self.facets)

    def __iter__(self):
        return iter(self.facets)

    def __getitem__(self, i):
        return self.facets[i]

    def used_vertices(self) -> set:
        return {v for f in self.facets for v in f}

    def as_complex(self, n: int) -> PureComplex:
        return PureComplex.from_facets(self.facets, n=n)


def _differ_by_one(a, b) -> bool:
    return len(a) == len(b) and len(set(a) - set(b)) == 1


@dataclass(frozen=True)
class DiameterReport:
    diameter: int
    witness_pair: tuple
    witness_path: tuple

    def to_dict(self) -> dict:
        return {
            "diameter": self.diameter,
            "witness_pair": [list(f) for f in self.witness_pair],
            "witness_path": [list(f) for f in self.witness_path],
        }


def dual_distance(C: AnyComplex, X, Y) -> float:
    X, Y = tuple(X), tuple(Y)
    if not _is_multi(C):
        X, Y = tuple(sorted(X)), tuple(sorted(Y))
    if X not in C.index or Y not in C.index:
        raise InvalidComplex("both endpoints must be facets")
    dist = dual_graph(C).bfs(C.index[X])[C.index[Y]]
    return INF if dist < 0 else dist


def _bfs_with_parents(G, source):
    from collections import deque

    dist = [-1] * len(G)
    parent = [-1] * len(G)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in G.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                parent[w] = u
                queue.append(w)
    return dist, parent


def shortest_path(C: AnyComplex, X, Y) -> tuple:
    """One shortest dual path from ``X`` to ``Y`` (BFS order, lowest index first)."""
    G = dual_graph(C)
    src, dst = C.index[tuple(X)], C.index[tuple(Y)]
    dist, parent = _bfs_with_parents(G, src)
    if dist[dst] < 0:
        raise Disconnected(f"{Y} is unreachable from {X}")
    out = [dst]
    while out[-1] != src:
        out.append(parent[out[-1]])
    return tuple(C.facets[i] for i in reversed(out))


def dual_diameter(C: AnyComplex) -> DiameterReport:
    """Exact diameter of the dual graph by BFS from every facet."""
    G = dual_graph(C)
    if not G.facets:
        raise Disconnected("empty complex")
    best = (-1, 0, 0)
    for s in range(len(G)):
        dist = G.bfs(s)
        if min(dist) < 0:
            raise Disconnected("dual graph is not connected")
        far = max(range(len(dist)), key=lambda i: (dist[i], -i))
        if dist[far] > best[0]:
            best = (dist[far], s, far)
    diam, s, t = best
    path = shortest_path(C, C.facets[s], C.facets[t])
    return DiameterReport(diam, (C.facets[s], C.facets[t]), path)


def is_non_revisiting(path: Sequence) -> tuple:
    """Check ``X_i & X_k <= X_j`` for all ``i < j < k``.

    Returns ``(True, None)`` or ``(False, (i, j, k))`` with the first violating
    triple in lexicographic order.
    """
    facets = [set(f) for f in path]
    N = len(facets)
    for i in range(N):
        for k in range(i + 2, N):
            common = facets[i] & facets[k]
            if not common:
                continue
            for j in range(i + 1, k):
                if not common <= facets[j]:
                    return False, (i, j, k)
    return True, None


def corridor_upper_bound(n: int, d: int) -> int:
    """Integer form of ``N (d - 1) + d <= C(n, d - 1)`` for a corridor of length N."""
    if d < 2:
        raise ValueError("the ridge-count bound needs d >= 2")
    return (comb(n, d - 1) - d) // (d - 1)


def hirsch_excess(n: int, d: int, delta: int) -> Fraction:
    if n <= d:
        raise ValueError("excess needs n > d")
    return Fraction(delta, n - d) - 1


# --- longest induced paths in Johnson graphs ---------------------------------

@dataclass(frozen=True)
class InducedPathResult:
    path: FacetPath
    length: int
    exact: bool
    budget_exhausted: bool = False
    nodes_explored: int = 0
    extras: dict = field(default_factory=dict)


def johnson_adjacency(n: int, d: int) -> tuple:
    """Nodes of J(n, d) in lexicographic order with bitmask adjacency."""
    from .constructions import complete_complex

    C = complete_complex(n, d)
    G = dual_graph(C)
    masks = tuple(sum(1 << j for j in G.adjacency[i]) for i in range(len(G)))
    return C.facets, masks


def is_induced_path(nodes: Sequence[int], masks: Sequence[int]) -> bool:
    """True iff consecutive nodes are adjacent and no other pair is."""
    pos = {v: i for i, v in enumerate(nodes)}
    if len(pos) != len(nodes):
        return False
    for i, v in enumerate(nodes):
        for j, w in enumerate(nodes):
            if i < j:
                adjacent = bool(masks[v] >> w & 1)
                if adjacent != (j == i + 1):
                    return False
    return True


def _exact_induced(masks, start, second, budget):
    """DFS over induced extensions of the fixed prefix ``(start, second)``.

    ``blocked`` holds the closed neighborhoods of all non-tail path nodes; a
    candidate must be a neighbor of the tail outside ``blocked``.  A branch is
    cut when even taking every unblocked node could not beat the best.
    """
    m = len(masks)
    full = (1 << m) - 1
    best = [start, second]
    explored = 0

    def bitcount(x):
        return bin(x).count("1")

    def dfs(path, blocked):
        nonlocal best, explored
        explored += 1
        if budget is not None and explored > budget:
            raise BudgetExceeded("induced-path search budget exhausted", best=list(best))
        tail = path[-1]
        cand = masks[tail] & ~blocked & full
        for v in path:
            cand &= ~(1 << v)
        if len(path) > len(best):
            best = list(path)
        if not cand:
            return
        remaining = full & ~blocked & ~(1 << tail)
        if len(path) + bitcount(remaining & ~sum(1 << v for v in path)) <= len(best):
            return
        new_blocked = blocked | masks[tail] | 1 << tail
        c = cand
        while c:
            low = c & -c
            v = low.bit_length() - 1
            c ^= low
            path.append(v)
            dfs(path, new_blocked)
            path.pop()

    dfs([start, second], masks[start] | 1 << start)
    return best, explored


def longest_induced_path_johnson(n: int, d: int, mode: str = "exact", budget: int | None = None,
                                 seed: int = 0, restarts: int = 200) -> InducedPathResult:
    """Longest induced path in J(n, d), i.e. the maximum diameter of a pure
    ``(d-1)``-complex on ``n`` vertices.

    Exact mode fixes the first node to ``{0..d-1}`` and the second to its
    lexicographically smallest neighbor; J(n, d) is vertex-transitive and the
    stabilizer of a node is transitive on its neighbors, so nothing is lost.
    Heuristic mode runs seeded randomized greedy restarts.
    """
    if not 1 <= d <= n:
        raise ValueError("need 1 <= d <= n")
    nodes, masks = johnson_adjacency(n, d)
    if len(nodes) == 1:
        return InducedPathResult(FacetPath(nodes), 0, True)
    if mode == "exact":
        check_cap("johnson_exact_nodes", len(nodes), f"C({n},{d})")
        start = 0
        second = (masks[0] & -masks[0]).bit_length() - 1
        try:
            best, explored = _exact_induced(masks, start, second, budget)
        except BudgetExceeded as exc:
            path = FacetPath(tuple(nodes[i] for i in exc.best))
            return InducedPathResult(path, path.length, False, True)
        path = FacetPath(tuple(nodes[i] for i in best))
        return InducedPathResult(path, path.length, True, False, explored)
    if mode != "heuristic":
        raise ValueError(f"unknown mode {mode!r}")
    return _heuristic_induced(nodes, masks, seed, restarts, budget)


def _heuristic_induced(nodes, masks, seed, restarts, budget):
    rng = random.Random(seed)
    m = len(masks)
    best = [0]
    steps = 0
    exhausted = False
    for _ in range(restarts):
        path = [rng.randrange(m)]
        blocked = 0
        while True:
            tail = path[-1]
            cand = masks[tail] & ~blocked
            for v in path:
                cand &= ~(1 << v)
            options = [v for v in range(m) if cand >> v & 1]
            if not options:
                break
            # prefer extensions that block the fewest new nodes
            scored = []
            for v in options:
                nb = blocked | masks[tail] | 1 << tail
                scored.append((bin(masks[v] & ~nb).count("1"), v))
            top = max(s for s, _ in scored)
            choice = rng.choice([v for s, v in scored if s >= top - 1])
            blocked |= masks[tail] | 1 << tail
            path.append(choice)
            steps += 1
        if len(path) > len(best):
            best = path
        if budget is not None and steps > budget:
            exhausted = True
            break
    path = FacetPath(tuple(nodes[i] for i in best))
    return InducedPathResult(path, path.length, False, exhausted, steps)
