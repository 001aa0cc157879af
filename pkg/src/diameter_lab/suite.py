"""Deterministic experiment suite reproducing the desk-scale reference numbers.

Each check builds a fixture, measures something on it and compares with an
expected value.  ``scales`` says which runs include the check: ``small``
finishes in well under a minute, ``full`` runs every check at full size.
Failure injection corrupts one check's fixture before measuring, which must
make that check fail and be reported by name.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb
from typing import Callable

import networkx as nx

from . import bounds, clm, constructions, decomposability, diameter, nonrevisiting
from .complex_core import PureComplex, dual_graph, is_corridor, is_flag, is_normal, is_pseudomanifold


@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    basis: str  # "published value", "computed cross-check" or "arithmetic"
    fixture: Callable[[str], object]
    measure: Callable[[object], object]
    scales: tuple = ("small", "full")
    corrupt: Callable[[object], object] | None = None


@dataclass
class CheckResult:
    name: str
    expected: object
    observed: object
    passed: bool
    seconds: float
    basis: str
    error: str | None = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "expected": _plain(self.expected),
            "observed": _plain(self.observed),
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "basis": self.basis,
            "error": self.error,
        }


def _plain(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


@dataclass
class SuiteResult:
    scale: str
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failed(self) -> list:
        return [r.name for r in self.results if not r.passed]

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "scale": self.scale,
            "passed": self.passed,
            "failed": self.failed,
            "checks": [r.to_dict() for r in self.results],
        }


def _drop_last_facet(C):
    return PureComplex.from_facets(C.facets[:-1], n=C.n, d=C.d)


class _Corrupted:
    """Stands in for a fixture whose contents were destroyed."""

    def __init__(self, original):
        self.original = original


class ExperimentSuite:
    def __init__(self, checks=None):
        self.checks = list(checks) if checks is not None else default_checks()

    def names(self) -> list:
        return [c.name for c in self.checks]

    def run(self, scale: str = "full", inject: str | None = None, only=None) -> SuiteResult:
        if scale not in ("small", "full"):
            raise ValueError(f"unknown scale {scale!r}")
        if inject is not None and inject not in self.names():
            raise ValueError(f"no check named {inject!r}")
        out = SuiteResult(scale)
        for check in self.checks:
            if scale not in check.scales and check.name != inject:
                continue
            if only and check.name not in only and check.name != inject:
                continue
            t0 = time.perf_counter()
            observed, error = None, None
            try:
                fixture = check.fixture(scale)
                if check.name == inject:
                    fixture = (check.corrupt or _Corrupted)(fixture)
                observed = check.measure(fixture)
                passed = observed == check.expected
            except Exception as exc:  # any crash is a failed check
                passed, error = False, f"{type(exc).__name__}: {exc}"
            out.results.append(CheckResult(check.name, check.expected, observed, passed,
                                           time.perf_counter() - t0, check.basis, error))
        return out


# --- check bodies -----------------------------------------------------------

def _corridor_13(C):
    return {"corridor": is_corridor(C), "facets": len(C), "diameter": diameter.dual_diameter(C).diameter}


def _corridor_sweep(ns):
    bad = []
    for n in ns:
        C = constructions.corridor_2complex(n)
        diam = diameter.dual_diameter(C).diameter
        ok = (is_corridor(C) and is_pseudomanifold(C)
              and ceil(Fraction(2, 9) * (n - 3) ** 2) <= diam <= diameter.corridor_upper_bound(n, 3))
        if not ok:
            bad.append(n)
    return bad


def _hamiltonian(ks):
    bad = []
    for k in ks:
        H = constructions.hamiltonian_decomposition(k)
        everything = {frozenset(e) for e in _all_pairs(2 * k + 1)}
        sets = H.edge_sets()
        union = set().union(*sets)
        if union != everything or sum(len(s) for s in sets) != len(everything) or len(sets) != k:
            bad.append(k)
    return bad


def _all_pairs(m):
    return [(i, j) for i in range(m) for j in range(i + 1, m)]


def _random_complex(rng, n_max=6):
    n = rng.randint(2, n_max)
    d = rng.randint(1, n - 1)
    pool = [tuple(sorted(rng.sample(range(n), d))) for _ in range(rng.randint(1, 6))]
    return PureComplex.from_facets(sorted(set(pool)), n=n, d=d)


def _join_product(count):
    rng = random.Random(0)
    bad = 0
    for _ in range(count):
        C1, C2 = _random_complex(rng), _random_complex(rng)
        J = constructions.join(C1, C2)
        G = dual_graph(J).to_networkx()
        H = nx.cartesian_product(dual_graph(C1).to_networkx(), dual_graph(C2).to_networkx())
        if not nx.is_isomorphic(G, H):
            bad += 1
    return bad


def _vertical_formula(limit):
    bad = []
    for l1 in range(2, limit + 1):
        for l2 in range(2, limit + 1):
            cells = constructions.product_induced_path(l1, l2, "vertical")
            if not _grid_induced(cells) or len(cells) - 1 != (l1 // 2 + 1) * l2 + l1:
                bad.append((l1, l2))
    return bad


def _grid_induced(cells):
    pos = {c: i for i, c in enumerate(cells)}
    if len(pos) != len(cells):
        return False
    for c, i in pos.items():
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            j = pos.get((c[0] + dx, c[1] + dy))
            if j is not None and abs(i - j) != 1:
                return False
    return all(constructions.grid_adjacent(a, b) for a, b in zip(cells, cells[1:]))


def _zigzag_usage(size):
    cells = constructions.product_induced_path(size, size, "zigzag")
    return _grid_induced(cells) and len(cells) / (size + 1) ** 2 >= 0.6


def _clm_extremal(limit):
    bad = []
    for n in range(2, limit + 1):
        for d in range(2, limit + 1):
            for M in (clm.complete_clm(n, d), clm.injective_clm(n, d)):
                if not clm.validate_clm(M) or M.length != d * (n - 1):
                    bad.append((n, d))
    return bad


def _clm_search(cases):
    return {f"{n},{d}": clm.max_clm_search(n, d).max_length for n, d in cases}


def _clm_instances(count):
    out = []
    for n in range(2, 5):
        for d in range(1, 5):
            out += [clm.complete_clm(n, d), clm.injective_clm(n, d)]
    rng = random.Random(0)
    while len(out) < count + 24:
        out.append(clm.random_clm(rng.randint(1, 4), rng.randint(1, 4), rng))
    return out


def _kk_bl(instances):
    bad = 0
    for M in instances:
        n, d = M.n, M.d
        ok = (bool(clm.validate_clm(M))
              and M.length <= bounds.kalai_kleitman_clm(n, d)
              and M.length <= bounds.barnette_larman_clm(n, d))
        split = clm.kk_split(M)
        if split.middle and split.middle_witness is None:
            ok = False
        pieces = clm.bl_decompose(M)
        if sum(p.elements for p in pieces) > 2 * n - 1:
            ok = False
        if any(p.common_element < 0 for p in pieces):
            ok = False
        bad += not ok
    return bad


def _substitution(limit):
    bad = []
    for n in range(1, limit + 1):
        for d in range(1, limit + 1):
            for M in (clm.complete_clm(n, d), clm.injective_clm(n, d)):
                S = clm.multicomplex_to_complex(M)
                if not clm.validate_clm(S) or S.length != M.length:
                    bad.append((n, d))
    return bad


def _nonpure(fixture):
    F, G = fixture
    lengths = []
    for _ in range(5):
        H = clm.extend_nonpure(G)
        lengths.append((H.length - G.length, clm.validate_nonpure(H)[0]))
        G = H
    return {"hnp5": (F.length, clm.validate_nonpure(F)[0]), "extensions": lengths}


def _legal_fixture(scale):
    L = clm.LegalSequence
    positives = [L(0, (set(),)), L(1, (set(),)), L(1, ({1},)), L(1, (set(), {1}))]
    negatives = [L(0, (set(), set())), L(1, ({1}, set(), {1})), L(1, (set(), {1}, set()))]
    return positives, negatives


def _legal(fixture):
    positives, negatives = fixture
    checker = clm.LegalChecker()
    doubled = clm.legal_double(positives[2], 1)
    return {
        "positives": all(checker.legal(s) for s in positives),
        "negatives": not any(checker.legal(s) for s in negatives),
        "double_length": doubled.length == 2,
        "double_legal": checker.legal(doubled),
    }


def _nonrevisiting(C):
    solver = nonrevisiting.NonRevisitingSolver(C)
    bad = 0
    for X in C.facets:
        for Y in C.facets:
            r = solver.solve(X, Y)
            if not r.non_revisiting or r.path.length > r.length_bound:
                bad += 1
    return bad


def _flag_normal(C):
    return is_flag(C) and is_normal(C)


def _nabla_weak(C):
    return decomposability.is_weakly_k_decomposable(C, 0).decomposable


def _obstruction(params):
    rep = decomposability.dk_obstruction_witness(*params)
    return rep.all_confirmed and rep.exhaustive_all_fail


def _pb_fixtures(scale):
    fixtures = [constructions.simplex_boundary(d) for d in range(2, 5)]
    return fixtures + [constructions.complete_complex(5, 2), constructions.complete_complex(5, 3)]


def _provan_billera(fixtures):
    bad = 0
    for C in fixtures:
        for k in range(C.d):
            for weak in (False, True):
                rep = decomposability.provan_billera_check(C, k, weak)
                if rep.decomposable and not rep.holds:
                    bad += 1
    return bad


def _bounds_table(table):
    return {
        "hirsch_excess": diameter.hirsch_excess(8, 4, 5),
        "spindle_excess": bounds.spindle_excess(25, 5, 6),
        "dstep_25": tuple(bounds.strong_dstep(25, 5, 6)),
        "dstep_48": bounds.strong_dstep(48, 5, 6).dimension,
        "table": all(bounds.known_Hb(n, d) == v for (n, d), v in table.items()),
        "klee_9": bounds.known_Hb(9, 3),
        "reduction_13_9": bounds.known_Hb(13, 9),
        "lower_12_4": bounds.polytope_bounds(12, 4).get("bounded_lower").value,
    }


def brute_force_induced_path(n: int, d: int) -> int:
    """Longest induced path in J(n, d) by plain enumeration from every node."""
    nodes, masks = diameter.johnson_adjacency(n, d)
    best = 0

    def extend(path, forbidden):
        nonlocal best
        best = max(best, len(path) - 1)
        tail = path[-1]
        for w in range(len(nodes)):
            if masks[tail] >> w & 1 and not forbidden >> w & 1:
                extend(path + [w], forbidden | masks[tail] | (1 << tail))

    for s in range(len(nodes)):
        extend([s], 1 << s)
    return best


def _johnson_cases():
    return [(n, d) for n in range(1, 16) for d in range(1, n + 1) if comb(n, d) <= 15]


def _johnson(cases):
    bad = []
    for n, d in cases:
        if diameter.longest_induced_path_johnson(n, d).length != brute_force_induced_path(n, d):
            bad.append((n, d))
    return bad


def _bary(d):
    return lambda scale: constructions.barycentric_subdivision(constructions.simplex_boundary(d))[0]


def default_checks() -> list:
    full = ("full",)
    return [
        Check("corridor-13", {"corridor": True, "facets": 35, "diameter": 34}, "published value",
              lambda s: constructions.corridor_2complex(13), _corridor_13, corrupt=_drop_last_facet),
        Check("corridor-sweep", [], "computed cross-check",
              lambda s: range(7, 21 if s == "small" else 41), _corridor_sweep,
              corrupt=lambda ns: [4]),
        Check("hamiltonian-decomposition", [], "computed cross-check",
              lambda s: range(1, 9), _hamiltonian, corrupt=lambda ks: [0]),
        Check("join-product", 0, "computed cross-check",
              lambda s: 10 if s == "small" else 50, _join_product),
        Check("product-vertical-formula", [], "published value", lambda s: 8, _vertical_formula),
        Check("zigzag-usage", True, "published value", lambda s: 12, _zigzag_usage,
              scales=full),
        Check("clm-extremal", [], "published value", lambda s: 4 if s == "small" else 6,
              _clm_extremal),
        Check("clm-search", {"2,1": 1, "2,2": 2, "2,3": 3, "2,4": 4, "3,2": 4, "4,2": 6, "3,3": 6},
              "published value",
              lambda s: [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (4, 2), (3, 3)], _clm_search,
              corrupt=lambda cases: cases[:-1]),
        Check("kk-bl-invariants", 0, "computed cross-check",
              lambda s: _clm_instances(50 if s == "small" else 200), _kk_bl),
        Check("substitution", [], "published value", lambda s: 3 if s == "small" else 5,
              _substitution),
        Check("nonpure-family", {"hnp5": (11, True), "extensions": [(2, True)] * 5},
              "published value", lambda s: (clm.example_hnp5(), clm.seed_nonpure()), _nonpure,
              corrupt=lambda f: (clm.NonpureLayeredFamily(5, f[0].layers[:-1]), f[1])),
        Check("legal-sequences", {"positives": True, "negatives": True, "double_length": True,
                                  "double_legal": True},
              "arithmetic", _legal_fixture, _legal, corrupt=lambda f: (f[1], f[0])),
        Check("barycentric-3-flag-normal", True, "published value", _bary(3), _flag_normal,
              corrupt=_drop_last_facet),
        Check("nonrevisiting-bary-3", 0, "published value", _bary(3), _nonrevisiting,
              corrupt=lambda C: constructions.simplex_boundary(3)),
        Check("nonrevisiting-bary-4", 0, "published value", _bary(4), _nonrevisiting, scales=full),
        Check("nabla-not-weakly-0-decomposable", False, "published value",
              lambda s: constructions.nabla(2, 2), _nabla_weak,
              corrupt=lambda C: constructions.nabla(1, 1)),
        Check("nabla-obstruction-cases", True, "published value", lambda s: (2, 2), _obstruction,
              corrupt=lambda p: (1, 2)),
        Check("provan-billera", 0, "computed cross-check", _pb_fixtures, _provan_billera),
        Check("bounds-table", {
            "hirsch_excess": Fraction(1, 4), "spindle_excess": Fraction(1, 20),
            "dstep_25": (20, 40, 21, True), "dstep_48": 43, "table": True,
            "klee_9": 5, "reduction_13_9": 4, "lower_12_4": 7,
        }, "published value", lambda s: bounds.known_Hb_table(), _bounds_table,
              corrupt=lambda t: {**t, (12, 4): 8}),
        Check("johnson-induced-paths", [], "computed cross-check",
              lambda s: [c for c in _johnson_cases() if s == "full" or comb(*c) <= 10],
              _johnson, corrupt=lambda cases: [(3, 5)]),
    ]
