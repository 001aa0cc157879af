"""Combinatorial segments and non-revisiting dual paths in normal complexes.

A segment goes from a facet ``X`` to a vertex set ``S``.  Far from ``S`` it
first moves inside the star of an anchor vertex ``x`` (recursing in the link
of ``x``) until a vertex ``y`` one step closer to ``S`` enters, then continues
from there anchored at ``y``.  In flag complexes such paths never revisit a
vertex star, and gluing a segment with a recursive path in the star of a
vertex of the target gives a non-revisiting path between any two facets.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .complex_core import INF, PureComplex, is_flag, is_normal, link, skeleton_graph
from .diameter import FacetPath, _differ_by_one, is_non_revisiting
from .errors import BadAnchor, Disconnected, InvalidComplex, NotCertified, NotFlag, NotNormal


class _Geometry:
    """1-skeleton distances of one complex, cached per source set."""

    def __init__(self, C: PureComplex):
        self.C = C
        self.adj = skeleton_graph(C)
        self._dist = {}

    def dist_from(self, S) -> dict:
        key = frozenset(S)
        if key not in self._dist:
            start = [s for s in key if s in self.adj]
            dist = {s: 0 for s in start}
            queue = deque(start)
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        queue.append(w)
            self._dist[key] = dist
        return self._dist[key]

    def vdist(self, A, S) -> float:
        dist = self.dist_from(S)
        return min((dist.get(a, INF) for a in A), default=INF)


@dataclass(frozen=True)
class SegmentCertificate:
    """A segment together with the choices made while building it.

    ``case`` is ``"distance-zero"``, ``"dimension-zero"`` or ``"recursive"``.
    For the recursive case, ``pivot`` is the index ``k`` of the first facet
    closer to the target, ``pivot_vertex`` the vertex ``y`` it adds,
    ``link_segment`` the segment inside the link of the anchor and
    ``tail_segment`` the segment from ``X_k`` anchored at ``y``.
    """

    complex: PureComplex
    source: tuple
    target: tuple
    anchor: int
    path: tuple
    case: str
    level: int = 0
    pivot: int | None = None
    pivot_vertex: int | None = None
    link_segment: "SegmentCertificate | None" = None
    tail_segment: "SegmentCertificate | None" = None

    @property
    def length(self) -> int:
        return len(self.path) - 1

    def to_dict(self) -> dict:
        out = {
            "case": self.case,
            "level": self.level,
            "source": list(self.source),
            "target": list(self.target),
            "anchor": self.anchor,
            "path": [list(f) for f in self.path],
        }
        if self.case == "recursive":
            out["pivot"] = self.pivot
            out["pivot_vertex"] = self.pivot_vertex
            out["link_segment"] = self.link_segment.to_dict()
            out["tail_segment"] = self.tail_segment.to_dict()
        return out


class SegmentBuilder:
    """Builds segments and non-revisiting paths in one root complex.

    Complexes met during the recursion are links ``lk_C(F)``; their skeleton
    distances are cached by facet list, so a sweep over many facet pairs
    reuses them.
    """

    def __init__(self, C: PureComplex):
        self.C = C
        self._geometry = {}
        self._links = {}

    def geometry(self, K: PureComplex) -> _Geometry:
        key = (K.n, K.d, K.facets)
        if key not in self._geometry:
            self._geometry[key] = _Geometry(K)
        return self._geometry[key]

    def link_of(self, K: PureComplex, v: int) -> PureComplex:
        key = (K.facets, v)
        if key not in self._links:
            self._links[key] = link(K, (v,))
        return self._links[key]

    def default_anchor(self, K: PureComplex, X, S) -> int:
        geo = self.geometry(K)
        best = geo.vdist(X, S)
        return min(v for v in X if geo.vdist((v,), S) == best)

    def segment(self, K: PureComplex, X, S, x: int | None = None, level: int = 0) -> SegmentCertificate:
        X = tuple(sorted(X))
        S = frozenset(S)
        if X not in K.index:
            raise InvalidComplex(f"{X} is not a facet")
        target = tuple(sorted(S))
        if K.d == 1:
            # points: every two facets are adjacent, the skeleton has no edges
            x = X[0] if x is None else x
            if x not in X:
                raise BadAnchor(f"anchor {x} is not in {X}")
            if X[0] in S:
                return SegmentCertificate(K, X, target, x, (X,), "distance-zero", level)
            ends = [u for u in S if (u,) in K.index]
            if not ends:
                raise Disconnected(f"no vertex of {sorted(S)} is a facet")
            return SegmentCertificate(K, X, target, x, (X, (min(ends),)), "dimension-zero", level)
        geo = self.geometry(K)
        delta = geo.vdist(X, S)
        if delta == INF:
            raise Disconnected(f"no vertex of {sorted(S)} is reachable from {X}")
        if x is None:
            x = self.default_anchor(K, X, S)
        if x not in X or geo.vdist((x,), S) != delta:
            raise BadAnchor(f"anchor {x} does not realize the distance from {X} to the target")
        if delta == 0:
            return SegmentCertificate(K, X, target, x, (X,), "distance-zero", level)
        from_x = geo.dist_from((x,))
        from_S = geo.dist_from(S)
        towards = frozenset(z for z in K.vertices
                            if from_x.get(z) == 1 and from_S.get(z) == delta - 1)
        L = self.link_of(K, x)
        inner_source = tuple(v for v in X if v != x)
        inner = self.segment(L, inner_source, towards, None, level + 1)
        gamma1 = [tuple(sorted(F + (x,))) for F in inner.path]
        k = len(gamma1) - 1
        (y,) = set(gamma1[-1]) - set(gamma1[-2])
        tail = self.segment(K, gamma1[-1], S, y, level)
        path = tuple(gamma1) + tail.path[1:]
        return SegmentCertificate(K, X, target, x, path, "recursive", level, k, y, inner, tail)

    def path(self, X, Y, K: PureComplex | None = None, depth: int = 0, trace: list | None = None,
             certs: list | None = None) -> list:
        """Facet path from ``X`` to ``Y`` in ``K`` (default: the root).

        ``trace`` collects a JSON-ready record per step and ``certs`` the
        segment certificates as ``(depth, certificate)`` pairs.
        """
        K = self.C if K is None else K
        X, Y = tuple(sorted(X)), tuple(sorted(Y))
        if X == Y:
            return [X]
        common = set(X) & set(Y)
        if common:
            v = min(common)
            if trace is not None:
                trace.append({"step": "link", "depth": depth, "vertex": v})
            L = self.link_of(K, v)
            sub = self.path(tuple(u for u in X if u != v), tuple(u for u in Y if u != v),
                            L, depth + 1, trace, certs)
            return [tuple(sorted(F + (v,))) for F in sub]
        if K.d == 1:
            return [X, Y]
        seg = self.segment(K, X, set(Y))
        end = seg.path[-1]
        v = min(set(end) & set(Y))
        if trace is not None:
            trace.append({"step": "segment", "depth": depth, "certificate": seg.to_dict(),
                          "vertex": v})
        if certs is not None:
            certs.append((depth, seg))
        L = self.link_of(K, v)
        rest = self.path(tuple(u for u in end if u != v), tuple(u for u in Y if u != v),
                         L, depth + 1, trace, certs)
        rest = [tuple(sorted(F + (v,))) for F in rest]
        return list(seg.path) + rest[1:]


# --- checking ----------------------------------------------------------------

@dataclass
class SegmentCheck:
    ok: bool = True
    failures: list = field(default_factory=list)

    def fail(self, message):
        self.ok = False
        self.failures.append(message)

    def __bool__(self):
        return self.ok


def _is_facet_path(K: PureComplex, path) -> bool:
    if not path or any(tuple(F) not in K.index for F in path):
        return False
    if len(set(map(tuple, path))) != len(path):
        return False
    return all(_differ_by_one(a, b) for a, b in zip(path, path[1:]))


def is_segment(builder: SegmentBuilder, K: PureComplex, path, S, x) -> bool:
    """Decide the recursive definition of a segment anchored at ``x`` directly.

    Nothing from the construction is reused: the pivot, the pivot vertex and
    the inner target set are recomputed, and the inner segment may use any
    anchor that realizes the distance.
    """
    path = [tuple(F) for F in path]
    S = frozenset(S)
    if not _is_facet_path(K, path):
        return False
    X = path[0]
    if x not in X:
        return False
    if K.d == 1:
        if X[0] in S:
            return len(path) == 1
        return len(path) == 2 and path[1][0] in S
    geo = builder.geometry(K)
    delta = geo.vdist(X, S)
    if geo.vdist((x,), S) != delta:
        return False
    if set(X) & S:
        return len(path) == 1
    if len(path) < 2:
        return False
    hits = [i for i, F in enumerate(path) if set(F) & S]
    if hits != [len(path) - 1]:
        return False
    closer = [i for i, F in enumerate(path) if geo.vdist(F, S) < delta]
    if not closer:
        return False
    k = closer[0]
    new = set(path[k]) - set(path[k - 1])
    if len(new) != 1:
        return False
    (y,) = new
    if geo.vdist((y,), S) != delta - 1:
        return False
    if not all(x in F for F in path[:k + 1]):
        return False
    from_x, from_S = geo.dist_from((x,)), geo.dist_from(S)
    towards = frozenset(z for z in K.vertices if from_x.get(z) == 1 and from_S.get(z) == delta - 1)
    L = builder.link_of(K, x)
    inner = [tuple(v for v in F if v != x) for F in path[:k + 1]]
    if not _some_anchor_works(builder, L, inner, towards):
        return False
    return is_segment(builder, K, path[k:], S, y)


def _some_anchor_works(builder, K, path, S) -> bool:
    if K.d == 1:
        return is_segment(builder, K, path, S, path[0][0])
    geo = builder.geometry(K)
    delta = geo.vdist(path[0], S)
    return any(is_segment(builder, K, path, S, a) for a in path[0]
               if geo.vdist((a,), S) == delta)


def star_property_violation(cert: SegmentCertificate):
    """First ``(level, l, z)`` where a vertex ``z`` next to the pivot vertex
    appears in ``X_l`` of the first part but leaves before ``X_k``."""
    if cert.case != "recursive":
        return None
    geo = _Geometry(cert.complex)
    near_y = geo.dist_from((cert.pivot_vertex,))
    gamma1 = cert.path[:cert.pivot + 1]
    for l, F in enumerate(gamma1):
        for z in F:
            if near_y.get(z) == 1 and not all(z in G for G in gamma1[l:]):
                return cert.level, l, z
    for sub in (cert.link_segment, cert.tail_segment):
        found = star_property_violation(sub)
        if found is not None:
            return found
    return None


def segment_monotone_check(cert: SegmentCertificate, builder: SegmentBuilder | None = None) -> SegmentCheck:
    """Replay a certificate against the definition and its consequences.

    Checks the definition itself, that the anchor realizes the distance, that
    the distance to the target never increases, that every suffix is again a
    segment (anchored at ``x`` before the pivot) and, in flag complexes, that
    vertices adjacent to the pivot vertex stay until the pivot.
    """
    K = cert.complex
    builder = builder or SegmentBuilder(K)
    report = SegmentCheck()
    path = [tuple(F) for F in cert.path]
    S = frozenset(cert.target)
    if not _is_facet_path(K, path):
        report.fail("not a facet path")
        return report
    if path[0] != tuple(cert.source):
        report.fail("path does not start at the source")
    geo = builder.geometry(K)
    if K.d > 1 and geo.vdist(path[0], S) != geo.vdist((cert.anchor,), S):
        report.fail("anchor does not realize the distance")
    if not is_segment(builder, K, path, S, cert.anchor):
        report.fail("definition fails")
        return report
    dists = [geo.vdist(F, S) for F in path]
    if any(b > a for a, b in zip(dists, dists[1:])):
        report.fail("distance to target increases")
    k = cert.pivot if cert.case == "recursive" else len(path)
    for l in range(1, len(path)):
        suffix = path[l:]
        ok = (is_segment(builder, K, suffix, S, cert.anchor) if l < k
              else _some_anchor_works(builder, K, suffix, S))
        if not ok:
            report.fail(f"suffix from {l} is not a segment")
    if cert.case == "recursive" and is_flag(K):
        found = star_property_violation(cert)
        if found is not None:
            report.fail(f"star property fails at level {found[0]}, position {found[1]}, vertex {found[2]}")
    return report


# --- public entry points -----------------------------------------------------

def combinatorial_segment(C: PureComplex, X, S, x: int | None = None,
                          check_normal: bool = True) -> SegmentCertificate:
    if check_normal and not is_normal(C):
        raise NotNormal("segments need a normal complex")
    return SegmentBuilder(C).segment(C, X, S, x)


@dataclass(frozen=True)
class NonRevisitingResult:
    path: FacetPath
    non_revisiting: bool
    length_bound: int
    trace: tuple = ()

    def to_dict(self) -> dict:
        return {
            "path": [list(f) for f in self.path.facets],
            "length": self.path.length,
            "non_revisiting": self.non_revisiting,
            "length_bound": self.length_bound,
            "trace": list(self.trace),
        }


class NonRevisitingSolver:
    """Checks the input once, then answers many facet pairs."""

    def __init__(self, C: PureComplex, require_flag: bool = True, check_normal: bool = True):
        if check_normal and not is_normal(C):
            raise NotNormal("non-revisiting paths need a normal complex")
        self.flag = is_flag(C)
        if require_flag and not self.flag:
            raise NotFlag("the complex is not flag; pass require_flag=False to experiment")
        self.C = C
        self.builder = SegmentBuilder(C)

    def solve(self, X, Y, with_trace: bool = False) -> NonRevisitingResult:
        X, Y = tuple(sorted(X)), tuple(sorted(Y))
        for F in (X, Y):
            if F not in self.C.index:
                raise InvalidComplex(f"{F} is not a facet")
        trace = [] if with_trace else None
        certs = None if self.flag else []
        facets = self.builder.path(X, Y, trace=trace, certs=certs)
        if certs:
            self._check_star_property(certs)
        ok, triple = is_non_revisiting(facets)
        if not ok:
            raise NotCertified(f"path revisits a vertex star at positions {triple}",
                               level="final", witness=triple)
        path = FacetPath(tuple(facets))
        bound = len(path.used_vertices()) - self.C.d
        if path.length > bound:
            raise NotCertified("path is longer than the vertex bound", level="final")
        return NonRevisitingResult(path, ok, bound, tuple(trace or ()))

    @staticmethod
    def _check_star_property(certs):
        for depth, cert in certs:
            found = star_property_violation(cert)
            if found is not None:
                level, position, z = found
                raise NotCertified(
                    f"flagness needed at recursion level {depth + level}: vertex {z} "
                    f"leaves the star of the pivot vertex at position {position}",
                    level=depth + level, witness={"position": position, "vertex": z})


def non_revisiting_path(C: PureComplex, X, Y, require_flag: bool = True) -> FacetPath:
    return NonRevisitingSolver(C, require_flag).solve(X, Y).path


_worker_solver = None


def _init_worker(C, require_flag):
    global _worker_solver
    _worker_solver = NonRevisitingSolver(C, require_flag, check_normal=False)


def _solve_chunk(pairs):
    return [_worker_solver.solve(X, Y) for X, Y in pairs]


def non_revisiting_sweep(C: PureComplex, pairs=None, jobs: int = 1, require_flag: bool = True) -> list:
    """Solve every ordered facet pair (or the given pairs), in input order.

    With ``jobs > 1`` the pairs are split into chunks solved in worker
    processes; the result does not depend on ``jobs``.
    """
    solver = NonRevisitingSolver(C, require_flag)
    if pairs is None:
        pairs = [(X, Y) for X in C.facets for Y in C.facets]
    pairs = list(pairs)
    if jobs <= 1 or len(pairs) < 2 * jobs:
        return [solver.solve(X, Y) for X, Y in pairs]
    size = -(-len(pairs) // (4 * jobs))
    chunks = [pairs[i:i + size] for i in range(0, len(pairs), size)]
    with ProcessPoolExecutor(jobs, initializer=_init_worker, initargs=(C, require_flag)) as pool:
        return [r for part in pool.map(_solve_chunk, chunks) for r in part]


__all__ = [
    "NonRevisitingResult",
    "NonRevisitingSolver",
    "SegmentBuilder",
    "SegmentCertificate",
    "SegmentCheck",
    "combinatorial_segment",
    "is_segment",
    "non_revisiting_path",
    "non_revisiting_sweep",
    "segment_monotone_check",
    "star_property_violation",
]
