"""Connected layer multicomplexes: layered objects, validation, extremal
examples, links, distance layering, the two splitting arguments and the
multiset-to-set substitution."""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations_with_replacement

from ..complex_core import (
    AnyComplex,
    PureComplex,
    PureMulticomplex,
    _is_multi,
    contains,
    dual_graph,
    faces_of_facet,
    normalize_face,
    face_size,
    _remove,
)
from ..errors import Disconnected, InvalidComplex, NotAFace


@dataclass(frozen=True)
class LayeredMulticomplex:
    """A pure (multi)complex with an integer layer for each facet.

    ``layers[i]`` is the layer of ``base.facets[i]``.  The base may be a
    :class:`PureMulticomplex` or, after substitution, a :class:`PureComplex`.
    """

    base: AnyComplex
    layers: tuple

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(int(x) for x in self.layers))
        if len(self.layers) != len(self.base.facets):
            raise InvalidComplex("need exactly one layer per facet")
        if not self.layers:
            raise InvalidComplex("a layered multicomplex needs at least one facet")

    @classmethod
    def from_layer_lists(cls, layer_lists, n: int, multi: bool = True, start: int = 0):
        """Build from ``[[facet, ...], ...]`` listed layer by layer."""
        facets, layer_of = [], {}
        for offset, layer in enumerate(layer_lists):
            for X in layer:
                X = tuple(X) if multi else tuple(sorted(X))
                facets.append(X)
                layer_of[X] = start + offset
        if multi:
            base = PureMulticomplex.from_facets(facets, n=n)
        else:
            base = PureComplex.from_facets(facets, n=n)
        return cls(base, tuple(layer_of[X] for X in base.facets))

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def d(self) -> int:
        return self.base.d

    @property
    def a(self) -> int:
        return min(self.layers)

    @property
    def b(self) -> int:
        return max(self.layers)

    @property
    def length(self) -> int:
        return self.b - self.a

    def layer_of(self, X) -> int:
        return self.layers[self.base.index[tuple(X)]]

    def layer_lists(self) -> list:
        """Facets grouped by layer from ``a`` to ``b`` (empty lists kept)."""
        out = [[] for _ in range(self.length + 1)]
        for X, layer in zip(self.base.facets, self.layers):
            out[layer - self.a].append(X)
        return out

    def elements_of_layer(self, layer: int) -> set:
        return {v for X, lay in zip(self.base.facets, self.layers) if lay == layer
                for v in _elements(self.base, X)}

    def used_elements(self) -> set:
        return {v for X in self.base.facets for v in _elements(self.base, X)}

    def normalized(self) -> "LayeredMulticomplex":
        """Shift layers so that the first one is 0."""
        shift = self.a
        return LayeredMulticomplex(self.base, tuple(x - shift for x in self.layers))


def _elements(C: AnyComplex, X) -> tuple:
    if _is_multi(C):
        return tuple(i for i, e in enumerate(X) if e)
    return tuple(X)


def clm_length(M: LayeredMulticomplex) -> int:
    return M.length


@dataclass(frozen=True)
class ClmValidation:
    valid: bool
    face: tuple | None = None
    missing_layer: int | None = None

    def __bool__(self):
        return self.valid


def validate_clm(M: LayeredMulticomplex) -> ClmValidation:
    """Check that every face's star meets a contiguous run of layers.

    Only faces of facets are examined; any other set has an empty star.  The
    first violation in ``(face, layer)`` order is reported, faces sorted as in
    :func:`~diameter_lab.complex_core.faces`.
    """
    seen = defaultdict(set)
    for X, layer in zip(M.base.facets, M.layers):
        for S in faces_of_facet(M.base, X):
            seen[S].add(layer)
    if _is_multi(M.base):
        order = sorted(seen)
    else:
        order = sorted(seen, key=lambda f: (len(f), f))
    for S in order:
        hit = seen[S]
        lo, hi = min(hit), max(hit)
        if len(hit) != hi - lo + 1:
            missing = min(set(range(lo, hi + 1)) - hit)
            return ClmValidation(False, S, missing)
    return ClmValidation(True)


def layer_by_distance(C: AnyComplex, X) -> LayeredMulticomplex:
    """Layer ``C`` by dual distance from facet ``X``."""
    X = normalize_face(C, X)
    if X not in C.index:
        raise InvalidComplex(f"{X} is not a facet")
    dist = dual_graph(C).bfs(C.index[X])
    if min(dist) < 0:
        raise Disconnected("dual graph is not connected")
    return LayeredMulticomplex(C, tuple(dist))


def clm_link(M: LayeredMulticomplex, S) -> LayeredMulticomplex:
    """Link of ``S`` with each facet ``X - S`` kept in the layer of ``X``."""
    S = normalize_face(M.base, S)
    pairs = [(_remove(M.base, X, S), layer) for X, layer in zip(M.base.facets, M.layers)
             if contains(M.base, X, S)]
    if not pairs:
        raise NotAFace(f"{S} is contained in no facet")
    d = M.d - face_size(M.base, S)
    cls = PureMulticomplex if _is_multi(M.base) else PureComplex
    base = cls.from_facets([p for p, _ in pairs], n=M.n, d=d)
    layer_of = dict(pairs)
    return LayeredMulticomplex(base, tuple(layer_of[X] for X in base.facets))


# --- extremal examples -------------------------------------------------------

def _degree_d_multisets(n: int, d: int):
    for combo in combinations_with_replacement(range(n), d):
        vec = [0] * n
        for i in combo:
            vec[i] += 1
        yield tuple(vec)


def element_sum(vec) -> int:
    """Sum of elements with multiplicity, elements numbered from 1."""
    return sum((i + 1) * e for i, e in enumerate(vec))


def complete_clm(n: int, d: int) -> LayeredMulticomplex:
    """Every degree-``d`` multiset on ``n`` elements, layered by element sum."""
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    base = PureMulticomplex.from_facets(list(_degree_d_multisets(n, d)), n=n, d=d)
    return LayeredMulticomplex(base, tuple(element_sum(X) for X in base.facets))


def injective_clm(n: int, d: int) -> LayeredMulticomplex:
    """Multisets ``i^p (i+1)^q`` with ``p + q = d``: one facet per layer."""
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    facets = set()
    for i in range(n):
        for q in range(d + 1):
            if q and i + 1 >= n:
                break
            vec = [0] * n
            vec[i] += d - q
            if q:
                vec[i + 1] += q
            facets.add(tuple(vec))
    base = PureMulticomplex.from_facets(sorted(facets), n=n, d=d)
    return LayeredMulticomplex(base, tuple(element_sum(X) for X in base.facets))


# --- splitting arguments ----------------------------------------------------

@dataclass(frozen=True)
class KKSplit:
    prefix: int
    middle: int
    suffix: int
    prefix_elements: int
    suffix_elements: int
    middle_witness: int | None


def kk_split(M: LayeredMulticomplex) -> KKSplit:
    """Split the layers into a prefix on at most ``(n-1)//2`` elements, a
    suffix on at most ``ceil((n-1)/2)`` elements and a middle whose layers
    all share an element (returned as the witness)."""
    n = M.n
    lo_cap, hi_cap = (n - 1) // 2, n // 2
    per_layer = [M.elements_of_layer(M.a + t) for t in range(M.length + 1)]
    total = len(per_layer)
    used, i = set(), 0
    while i < total and len(used | per_layer[i]) <= lo_cap:
        used |= per_layer[i]
        i += 1
    prefix_elements = len(used)
    used, j = set(), 0
    while i + j < total and len(used | per_layer[total - 1 - j]) <= hi_cap:
        used |= per_layer[total - 1 - j]
        j += 1
    suffix_elements = len(used)
    k = total - i - j
    witness = None
    if k:
        common = set.intersection(*per_layer[i:i + k])
        witness = min(common) if common else None
    return KKSplit(i, k, j, prefix_elements, suffix_elements, witness)


@dataclass(frozen=True)
class BLPiece:
    first: int
    last: int
    elements: int
    common_element: int

    @property
    def length(self) -> int:
        return self.last - self.first


def bl_decompose(M: LayeredMulticomplex) -> list:
    """Greedy pieces: each runs from its first layer to the last layer that
    shares an element with it.  Layer numbers are absolute."""
    per_layer = {t: M.elements_of_layer(t) for t in range(M.a, M.b + 1)}
    pieces = []
    start = M.a
    while start <= M.b:
        first = per_layer[start]
        end = max(t for t in range(start, M.b + 1) if per_layer[t] & first)
        common = set(first)
        for t in range(start, end + 1):
            common &= per_layer[t]
        used = set().union(*(per_layer[t] for t in range(start, end + 1)))
        # the interval condition guarantees a common element; report the smallest
        pieces.append(BLPiece(start, end, len(used), min(common) if common else -1))
        start = end + 1
    return pieces


# --- substitution ------------------------------------------------------------

def multicomplex_to_complex(M: LayeredMulticomplex) -> LayeredMulticomplex:
    """Replace ``i^k`` by the ``k`` distinct vertices ``(i, 1..k)``.

    Vertex ``(i, c)`` gets id ``i*d + c - 1`` on a universe of ``n*d``.
    """
    if not _is_multi(M.base):
        return M
    d = M.d
    facets = []
    for X in M.base.facets:
        facets.append(tuple(i * d + c for i, e in enumerate(X) for c in range(e)))
    base = PureComplex.from_facets(facets, n=M.n * d, d=d)
    layer_of = {f: layer for f, layer in zip(facets, M.layers)}
    return LayeredMulticomplex(base, tuple(layer_of[X] for X in base.facets))


# --- random instances --------------------------------------------------------

def random_clm(n: int, d: int, rng: random.Random | int = 0, stop: float = 0.25) -> LayeredMulticomplex:
    """A random valid c.l.m. built layer by layer.

    Each new layer is a random nonempty subset of the facets still allowed;
    a face that appeared earlier but is missing from the latest layer is
    closed for good, which keeps every star an interval.
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    pool = list(_degree_d_multisets(n, d))
    universe = PureMulticomplex.from_facets(pool, n=n, d=d)
    face_sets = {X: set(faces_of_facet(universe, X)) for X in pool}
    available = list(pool)
    layers = []
    closed, previous = set(), set()
    while available:
        layer = rng.sample(available, rng.randint(1, min(3, len(available))))
        current = set().union(*(face_sets[X] for X in layer))
        closed |= previous - current
        previous = current
        layers.append(layer)
        chosen = set(layer)
        available = [X for X in available if X not in chosen and not face_sets[X] & closed]
        if rng.random() < stop:
            break
    return LayeredMulticomplex.from_layer_lists(layers, n=n)
