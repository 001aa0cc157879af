"""Shedding-face searches for (weak) k-decomposability, their certificate
verifiers, the diameter inequalities they imply, and the non-pureness
witnesses for the polar fractional hypersimplices."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from math import comb

from .caps import check_cap, get_cap
from .complex_core import (
    PureComplex,
    canonical_form,
    deletion,
    f_count,
    faces,
    is_deletion_pure,
    link,
)
from .constructions import nabla, nabla_vertex
from .diameter import dual_diameter
from .errors import BudgetExceeded, InvalidComplex


@dataclass(frozen=True)
class SheddingTree:
    """Certificate for k-decomposability.  A leaf has ``face=None``."""

    complex: PureComplex
    face: tuple | None = None
    deletion_branch: "SheddingTree | None" = None
    link_branch: "SheddingTree | None" = None

    def to_dict(self) -> dict:
        out = {"facets": [list(f) for f in self.complex.facets]}
        if self.face is not None:
            out["face"] = list(self.face)
            out["deletion"] = self.deletion_branch.to_dict()
            out["link"] = self.link_branch.to_dict()
        return out

    def size(self) -> int:
        if self.face is None:
            return 1
        return 1 + self.deletion_branch.size() + self.link_branch.size()


@dataclass(frozen=True)
class DecompositionResult:
    decomposable: bool
    certificate: object = None
    states: int = 0


class _Search:
    def __init__(self, k: int, weak: bool, budget: int | None):
        self.k = k
        self.weak = weak
        self.budget = budget
        self.states = 0
        self.failed = set()
        self.use_canonical = True

    def key(self, C: PureComplex, k: int):
        if self.use_canonical and C.n <= get_cap("canonical_n"):
            return canonical_form(C)[0].facets, C.n, k
        return frozenset(C.facets), C.n, k

    def tick(self):
        self.states += 1
        if self.budget is not None and self.states > self.budget:
            raise BudgetExceeded(f"decomposability search exceeded {self.budget} states")

    def candidates(self, C: PureComplex, k: int):
        return faces(C, 1, min(k + 1, C.d))

    def weak_search(self, C: PureComplex):
        """Shedding sequence or None."""
        if len(C) == 1:
            return []
        key = self.key(C, self.k)
        if key in self.failed:
            return None
        self.tick()
        for S in self.candidates(C, self.k):
            if not is_deletion_pure(C, S):
                continue
            rest = self.weak_search(deletion(C, S))
            if rest is not None:
                return [S] + rest
        self.failed.add(key)
        return None

    def strong_search(self, C: PureComplex, k: int):
        """SheddingTree or None."""
        if len(C) == 1:
            return SheddingTree(C)
        key = self.key(C, k)
        if key in self.failed:
            return None
        self.tick()
        for S in self.candidates(C, k):
            if not is_deletion_pure(C, S):
                continue
            lk = link(C, S)
            lk_tree = self.strong_search(lk, min(k, max(lk.d - 1, 0)))
            if lk_tree is None:
                continue
            del_tree = self.strong_search(deletion(C, S), k)
            if del_tree is not None:
                return SheddingTree(C, S, del_tree, lk_tree)
        self.failed.add(key)
        return None


def _check_input(C: PureComplex, k: int):
    if not 0 <= k <= C.d - 1:
        raise InvalidComplex(f"need 0 <= k <= d-1, got k={k}, d={C.d}")
    check_cap("decompose_facets", len(C), "facet count")


def is_k_decomposable(C: PureComplex, k: int, budget: int | None = None) -> DecompositionResult:
    _check_input(C, k)
    search = _Search(k, weak=False, budget=budget)
    tree = search.strong_search(C, k)
    return DecompositionResult(tree is not None, tree, search.states)


def is_weakly_k_decomposable(C: PureComplex, k: int, budget: int | None = None) -> DecompositionResult:
    _check_input(C, k)
    search = _Search(k, weak=True, budget=budget)
    seq = search.weak_search(C)
    return DecompositionResult(seq is not None, None if seq is None else tuple(seq), search.states)


# --- certificate replay ------------------------------------------------------

def verify_shedding_sequence(C: PureComplex, k: int, sequence) -> bool:
    """Replay a weak shedding sequence from scratch."""
    current = C
    for S in sequence:
        S = tuple(sorted(S))
        if not 1 <= len(S) <= k + 1:
            return False
        if not any(set(S) <= set(X) for X in current.facets):
            return False
        if not is_deletion_pure(current, S):
            return False
        current = deletion(current, S)
    return len(current) == 1


def verify_shedding_tree(tree: SheddingTree, k: int) -> bool:
    """Recheck every node: leaves are single facets, every shed face is small
    enough, every deletion is pure, and both branches hold the right complexes."""
    C = tree.complex
    if tree.face is None:
        return len(C) == 1
    S = tree.face
    if not 1 <= len(S) <= k + 1:
        return False
    if not any(set(S) <= set(X) for X in C.facets):
        return False
    if not is_deletion_pure(C, S):
        return False
    if tree.deletion_branch.complex.facets != deletion(C, S).facets:
        return False
    lk = link(C, S)
    if tree.link_branch.complex.facets != lk.facets:
        return False
    return (verify_shedding_tree(tree.deletion_branch, k)
            and verify_shedding_tree(tree.link_branch, min(k, max(lk.d - 1, 0))))


# --- diameter inequalities ---------------------------------------------------

@dataclass(frozen=True)
class ProvanBilleraReport:
    k: int
    weak: bool
    decomposable: bool
    diameter: int | None = None
    bound: int | None = None
    holds: bool | None = None
    details: dict = field(default_factory=dict)


def provan_billera_check(C: PureComplex, k: int, weak: bool = False,
                         budget: int | None = None) -> ProvanBilleraReport:
    """Decide decomposability and, when it holds, compare the dual diameter
    with ``f_k - C(d, k+1)`` (strong) or ``2 f_k`` (weak)."""
    decide = is_weakly_k_decomposable if weak else is_k_decomposable
    res = decide(C, k, budget)
    if not res.decomposable:
        return ProvanBilleraReport(k, weak, False)
    fk = f_count(C, k)
    bound = 2 * fk if weak else fk - comb(C.d, k + 1)
    diam = dual_diameter(C).diameter
    return ProvanBilleraReport(k, weak, True, diam, bound, diam <= bound, {"f_k": fk})


# --- the obstruction for nabla ----------------------------------------------

@dataclass(frozen=True)
class ObstructionCase:
    order: tuple
    pure_steps: tuple
    full_facet: tuple
    ridge: tuple
    blocked_facets: tuple
    confirmed: bool


@dataclass(frozen=True)
class ObstructionReport:
    a: int
    b: int
    cases: tuple
    all_confirmed: bool
    exhaustive_triples: int
    exhaustive_all_fail: bool


def _signed(vs):
    return tuple(nabla_vertex(v) for v in vs)


def _antistar_after(C: PureComplex, removed):
    rm = set(removed)
    return [X for X in C.facets if not rm & set(X)]


def _pureness_steps(C: PureComplex, order):
    """Pureness of each successive vertex deletion (stops at the first failure)."""
    steps = []
    current = C
    for v in order:
        ok = is_deletion_pure(current, (v,))
        steps.append(ok)
        if not ok:
            break
        current = deletion(current, (v,))
    return tuple(steps)


def dk_obstruction_witness(a: int, b: int) -> ObstructionReport:
    """Check the two cases of the non-shedding argument on ``nabla(a, b)``.

    Case one deletes ``+1, +2`` in either order.  Case two deletes
    ``{+1, +2, -1}`` or ``{+1, +2, -3}`` in every order whose first two
    vertices are not both positive.  For each, the surviving complex must
    still contain one of the two full-dimensional facets and the ridge shared
    by the two positive-labelled facets below, while neither facet through
    that ridge survives.  Separately every ordered triple of vertices is
    checked to break pureness within three deletions.
    """
    if a < 2 or b < 2:
        raise InvalidComplex("the obstruction needs a, b >= 2")
    C = nabla(a, b)
    m = a + b + 1
    full_1 = tuple(sorted(_signed([-j for j in range(2, b + 2)] + list(range(b + 2, m + 1)))))
    full_2 = tuple(sorted(_signed([-1, -2] + [-j for j in range(4, b + 2)] + list(range(b + 2, m + 1)))))
    tail = [-j for j in range(a + 2, m + 1)]
    F1 = tuple(sorted(_signed([1] + list(range(3, a + 2)) + tail)))
    F2 = tuple(sorted(_signed([2] + list(range(3, a + 2)) + tail)))
    ridge = tuple(sorted(set(F1) & set(F2)))

    orders = [(1, 2), (2, 1)]
    for third in (-1, -3):
        for perm in permutations((1, 2, third)):
            if perm[0] > 0 and perm[1] > 0:
                continue
            orders.append(perm)

    cases = []
    for order in orders:
        removed = _signed(order)
        left = _antistar_after(C, removed)
        left_sets = [set(X) for X in left]
        full = full_1 if full_1 in left else full_2 if full_2 in left else None
        ridge_is_face = not set(removed) & set(ridge)
        ridge_uncovered = not any(set(ridge) <= X for X in left_sets)
        blocked = F1 not in left and F2 not in left
        # the face-level deletion must also report the short maximal face
        faces_left = _iterated_maximal_faces(C, removed)
        seen_short = any(len(F) < C.d for F in faces_left)
        confirmed = (full is not None and ridge_is_face and ridge_uncovered
                     and blocked and seen_short)
        cases.append(ObstructionCase(order, _pureness_steps(C, removed), full or (),
                                     ridge, (F1, F2), confirmed))

    count, all_fail = 0, True
    for triple in permutations(range(C.n), 3):
        count += 1
        if all(_pureness_steps(C, triple)) and len(_pureness_steps(C, triple)) == 3:
            all_fail = False
    return ObstructionReport(a, b, tuple(cases), all(c.confirmed for c in cases), count, all_fail)


def _iterated_maximal_faces(C: PureComplex, removed):
    """Maximal faces of the subcomplex of faces avoiding all of ``removed``.

    Vertex deletions commute at face level, so this equals the repeated
    antistar whether or not the intermediate steps were pure.
    """
    rm = set(removed)
    keep = {tuple(v for v in X if v not in rm) for X in C.facets}
    return [F for F in keep if not any(set(F) < set(G) for G in keep)]


__all__ = [
    "DecompositionResult",
    "ObstructionReport",
    "ProvanBilleraReport",
    "SheddingTree",
    "dk_obstruction_witness",
    "is_k_decomposable",
    "is_weakly_k_decomposable",
    "provan_billera_check",
    "verify_shedding_sequence",
    "verify_shedding_tree",
]
