"""Exhaustive search for the longest c.l.m. of rank ``d`` on ``n`` elements."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from ..caps import check_cap
from ..complex_core import PureMulticomplex, faces_of_facet
from ..errors import BudgetExceeded
from .layered import LayeredMulticomplex, _degree_d_multisets


@dataclass(frozen=True)
class ClmSearchResult:
    n: int
    d: int
    max_length: int
    witness: LayeredMulticomplex
    states: int


def _submasks(mask: int):
    """Nonempty submasks of ``mask`` in increasing numeric order."""
    bits = [1 << i for i in range(mask.bit_length()) if mask >> i & 1]
    out = []
    for pick in range(1, 1 << len(bits)):
        out.append(sum(b for t, b in enumerate(bits) if pick >> t & 1))
    out.sort()
    return out


def max_clm_search(n: int, d: int, budget: int | None = None) -> ClmSearchResult:
    """Exact maximum length over every c.l.m. of rank ``d`` on ``n`` elements.

    A layer sequence is grown one layer at a time.  A face that occurred in an
    earlier layer but is absent from the newest one can never occur again, so
    the future only depends on the newest layer ``L`` and the set ``A`` of
    facets still allowed.  ``best(L, A)`` is memoized on the lexicographically
    smallest image of ``(L, A)`` under element permutations.
    """
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    check_cap("clm_search_n", n, "n")
    pool = list(_degree_d_multisets(n, d))
    m = len(pool)
    check_cap("clm_search_facets", m, f"C({n}+{d}-1,{d})")
    universe = PureMulticomplex.from_facets(pool, n=n, d=d)
    pool = list(universe.facets)
    index = {X: i for i, X in enumerate(pool)}

    face_ids = {}
    for X in pool:
        for S in faces_of_facet(universe, X):
            face_ids.setdefault(S, len(face_ids))
    face_mask = [sum(1 << face_ids[S] for S in faces_of_facet(universe, X)) for X in pool]

    # facet permutations induced by element permutations
    perms = []
    for sigma in permutations(range(n)):
        image = []
        for X in pool:
            Y = [0] * n
            for i, e in enumerate(X):
                Y[sigma[i]] = e
            image.append(index[tuple(Y)])
        perms.append(image)

    def apply(perm, mask):
        out = 0
        while mask:
            low = mask & -mask
            out |= 1 << perm[low.bit_length() - 1]
            mask ^= low
        return out

    def canon(L, A):
        return min((apply(p, L), apply(p, A)) for p in perms)

    def faces_of(mask):
        out = 0
        while mask:
            low = mask & -mask
            out |= face_mask[low.bit_length() - 1]
            mask ^= low
        return out

    def successor(L, A, new):
        closed = faces_of(L) & ~faces_of(new)
        rest = A & ~new
        keep = 0
        while rest:
            low = rest & -rest
            if not face_mask[low.bit_length() - 1] & closed:
                keep |= low
            rest ^= low
        return keep

    states = 0

    @lru_cache(maxsize=None)
    def best(key):
        nonlocal states
        states += 1
        if budget is not None and states > budget:
            raise BudgetExceeded(f"c.l.m. search exceeded {budget} states")
        L, A = key
        top = 0
        for new in _submasks(A):
            top = max(top, 1 + best(canon(new, successor(L, A, new))))
        return top

    full = (1 << m) - 1
    length = -1
    for first in _submasks(full):
        length = max(length, best(canon(first, full & ~first)))

    # replay the optimum on concrete states to get a witness
    layers = None
    for first in _submasks(full):
        if best(canon(first, full & ~first)) == length:
            layers = [first]
            break
    L, A = layers[0], full & ~layers[0]
    remaining = length
    while remaining:
        for new in _submasks(A):
            nxt = successor(L, A, new)
            if 1 + best(canon(new, nxt)) == remaining:
                layers.append(new)
                L, A = new, nxt
                remaining -= 1
                break
    lists = [[pool[i] for i in range(m) if mask >> i & 1] for mask in layers]
    witness = LayeredMulticomplex.from_layer_lists(lists, n=n)
    info = best.cache_info()
    best.cache_clear()
    return ClmSearchResult(n, d, length, witness, info.currsize)
