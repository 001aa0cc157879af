"""Command-line front end.

Exit codes: 0 success, 1 a requested assertion failed, 2 bad input,
3 a size cap or search budget was hit.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import bounds, clm, constructions, decomposability, diameter, io, nonrevisiting
from .complex_core import (
    PureComplex,
    _is_multi,
    is_corridor,
    is_flag,
    is_normal,
    is_pseudomanifold,
    is_strongly_connected,
)
from .errors import DiameterLabError, InvalidComplex
from .suite import ExperimentSuite

EXIT_OK, EXIT_ASSERT, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


def _face(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.replace(" ", "").split(",") if v != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _emit(args, payload) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2, default=str)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text.rstrip("\n"))


def _load_complex(path) -> PureComplex:
    obj = io.load(path)
    if isinstance(obj, clm.LayeredMulticomplex):
        return obj.base
    if not hasattr(obj, "facets"):
        raise InvalidComplex(f"{path} does not hold a complex")
    return obj


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise InvalidComplex("missing " + ", ".join("--" + m.replace("_", "-") for m in missing))


# --- construct ---------------------------------------------------------------

def cmd_construct(args) -> int:
    kind = args.kind
    if kind == "johnson-graph":
        _require(args, "n", "d")
        _emit(args, io.johnson_graph_dot(args.n, args.d))
        return EXIT_OK
    if kind == "complete":
        _require(args, "n", "d")
        obj = constructions.complete_complex(args.n, args.d)
    elif kind == "simplex-boundary":
        _require(args, "d")
        obj = constructions.simplex_boundary(args.d)
    elif kind == "corridor2":
        _require(args, "n")
        obj = constructions.corridor_2complex(args.n)
    elif kind == "join":
        if not args.inputs or len(args.inputs) != 2:
            raise InvalidComplex("join needs --inputs A.json B.json")
        C1, C2 = (_load_complex(p) for p in args.inputs)
        obj = (constructions.join_corridor(C1, C2, args.strategy) if args.corridor
               else constructions.join(C1, C2))
    elif kind == "iterated-join":
        _require(args, "n", "d", "k")
        obj = constructions.iterated_join_corridor(args.n, args.d, args.k, strategy=args.strategy)
    elif kind == "nabla":
        _require(args, "a", "b")
        obj = constructions.nabla(args.a, args.b)
    elif kind == "barycentric":
        if args.inputs:
            base = _load_complex(args.inputs[0])
        else:
            _require(args, "d")
            base = constructions.simplex_boundary(args.d)
        obj = constructions.barycentric_subdivision(base)[0]
    elif kind == "complete-clm":
        _require(args, "n", "d")
        obj = clm.complete_clm(args.n, args.d)
    elif kind == "injective-clm":
        _require(args, "n", "d")
        obj = clm.injective_clm(args.n, args.d)
    else:  # argparse restricts the choices
        raise InvalidComplex(f"unknown kind {kind}")
    _emit(args, io.dual_graph_dot(obj) if args.format == "dot" else io.dumps(obj))
    return EXIT_OK


# --- analyze -----------------------------------------------------------------

PREDICATES = {
    "corridor": is_corridor,
    "pseudomanifold": is_pseudomanifold,
    "strongly-connected": is_strongly_connected,
    "normal": is_normal,
    "flag": is_flag,
}


def cmd_analyze(args) -> int:
    obj = io.load(args.file)
    if args.format == "dot":
        _emit(args, io.dual_graph_dot(obj))
        return EXIT_OK
    C = obj.base if isinstance(obj, clm.LayeredMulticomplex) else obj
    report = {"schema": 1, "n": C.n, "d": C.d, "facets": len(C), "checks": {}}
    ok = True
    for name in args.check or []:
        if name == "flag" and _is_multi(C):
            raise InvalidComplex("flagness is defined for complexes only")
        value = PREDICATES[name](C)
        report["checks"][name] = value
        ok &= value
    if args.diameter is not None or args.show_diameter:
        rep = diameter.dual_diameter(C)
        report["diameter"] = rep.to_dict()
        if args.diameter is not None:
            report["checks"]["diameter"] = rep.diameter == args.diameter
            ok &= rep.diameter == args.diameter
    if isinstance(obj, clm.LayeredMulticomplex):
        v = clm.validate_clm(obj)
        report["clm_valid"] = v.valid
        report["clm_length"] = obj.length
        if args.check_clm:
            ok &= v.valid
    report["passed"] = bool(ok)
    _emit(args, report)
    return EXIT_OK if ok else EXIT_ASSERT


# --- clm ---------------------------------------------------------------------

def cmd_clm(args) -> int:
    action = args.action
    if action in ("complete", "injective", "random"):
        _require(args, "n", "d")
        if action == "complete":
            M = clm.complete_clm(args.n, args.d)
        elif action == "injective":
            M = clm.injective_clm(args.n, args.d)
        else:
            M = clm.random_clm(args.n, args.d, random.Random(args.seed))
        if args.substitute:
            M = clm.multicomplex_to_complex(M)
        _emit(args, io.dual_graph_dot(M) if args.format == "dot" else io.dumps(M))
        return EXIT_OK
    if action == "search":
        _require(args, "n", "d")
        res = clm.max_clm_search(args.n, args.d, args.budget)
        _emit(args, {"schema": 1, "n": res.n, "d": res.d, "max_length": res.max_length,
                     "states": res.states, "witness": io.to_dict(res.witness)})
        return EXIT_OK
    if action == "nonpure":
        F = clm.example_hnp5() if args.n is None else clm.seed_nonpure()
        for _ in range(args.extend if args.n is None else max(args.n - 1, 0)):
            F = clm.extend_nonpure(F)
        ok, witness = clm.validate_nonpure(F)
        out = io.to_dict(F)
        out.update({"length": F.length, "valid": ok})
        if not ok:
            out["violation"] = {"set": sorted(witness[0]), "missing_layer": witness[1]}
        _emit(args, out)
        return EXIT_OK if ok else EXIT_ASSERT
    if action == "legal":
        if args.file:
            seq = io.load(args.file)
        elif args.sets is not None:
            sets = [frozenset(_face(s)) if s not in ("", "-") else frozenset()
                    for s in args.sets.split("/")]
            n = args.n if args.n is not None else max((max(S) for S in sets if S), default=0)
            seq = clm.LegalSequence(n, tuple(sets))
        else:
            raise InvalidComplex("legal needs FILE or --sets")
        if args.double:
            seq = clm.legal_double(seq, args.double)
        verdict = clm.legal_check(seq)
        _emit(args, {"schema": 1, "n": seq.n, "length": seq.length,
                     "sets": [sorted(S) for S in seq.sets], "legal": verdict})
        return EXIT_OK if verdict else EXIT_ASSERT
    # the remaining actions read a layered object
    if not args.file:
        raise InvalidComplex(f"clm {action} needs FILE")
    M = io.load(args.file)
    if not isinstance(M, clm.LayeredMulticomplex):
        raise InvalidComplex(f"{args.file} does not hold a layered object")
    if action == "validate":
        v = clm.validate_clm(M)
        out = {"schema": 1, "valid": v.valid, "length": M.length}
        if not v.valid:
            out["violation"] = {"face": list(v.face), "missing_layer": v.missing_layer}
        _emit(args, out)
        return EXIT_OK if v.valid else EXIT_ASSERT
    if action == "split":
        kk = clm.kk_split(M)
        bl = clm.bl_decompose(M)
        _emit(args, {"schema": 1, "length": M.length,
                     "kk": kk.__dict__,
                     "bl": [p.__dict__ for p in bl],
                     "kk_bound": str(bounds.kalai_kleitman_clm(M.n, M.d)),
                     "bl_bound": bounds.barnette_larman_clm(M.n, M.d)})
        return EXIT_OK
    if action == "substitute":
        _emit(args, io.dumps(clm.multicomplex_to_complex(M)))
        return EXIT_OK
    raise InvalidComplex(f"unknown action {action}")


# --- path --------------------------------------------------------------------

def cmd_path(args) -> int:
    C = _load_complex(args.file)
    if args.segment_to is not None:
        if args.source is None:
            raise InvalidComplex("--segment-to needs --from")
        cert = nonrevisiting.combinatorial_segment(C, args.source, set(args.segment_to), args.anchor)
        check = nonrevisiting.segment_monotone_check(cert)
        _emit(args, {"schema": 1, "certificate": cert.to_dict(), "replay_ok": check.ok,
                     "failures": check.failures})
        return EXIT_OK if check.ok else EXIT_ASSERT
    if args.all_pairs:
        results = nonrevisiting.non_revisiting_sweep(C, jobs=args.jobs,
                                                     require_flag=not args.allow_nonflag)
        worst = max(r.path.length for r in results)
        _emit(args, {"schema": 1, "pairs": len(results), "longest": worst,
                     "all_non_revisiting": all(r.non_revisiting for r in results),
                     "within_bound": all(r.path.length <= r.length_bound for r in results)})
        return EXIT_OK
    if args.source is None or args.target is None:
        raise InvalidComplex("path needs --from and --to (or --all-pairs)")
    solver = nonrevisiting.NonRevisitingSolver(C, require_flag=not args.allow_nonflag)
    result = solver.solve(args.source, args.target, with_trace=args.trace)
    out = result.to_dict()
    out["schema"] = 1
    out["dual_distance"] = diameter.dual_distance(C, args.source, args.target)
    _emit(args, out)
    return EXIT_OK


# --- decompose ---------------------------------------------------------------

def cmd_decompose(args) -> int:
    if args.obstruction:
        a, b = args.obstruction
        rep = decomposability.dk_obstruction_witness(a, b)
        _emit(args, {"schema": 1, "a": a, "b": b, "all_confirmed": rep.all_confirmed,
                     "triples": rep.exhaustive_triples, "all_triples_fail": rep.exhaustive_all_fail,
                     "cases": [{"order": list(c.order), "pure_steps": list(c.pure_steps),
                                "confirmed": c.confirmed} for c in rep.cases]})
        return EXIT_OK if rep.all_confirmed and rep.exhaustive_all_fail else EXIT_ASSERT
    if args.nabla:
        C = constructions.nabla(*args.nabla)
    elif args.file:
        C = _load_complex(args.file)
    else:
        raise InvalidComplex("decompose needs FILE, --nabla A B or --obstruction A B")
    rep = decomposability.provan_billera_check(C, args.k, args.weak, args.budget)
    out = {"schema": 1, "k": args.k, "weak": args.weak, "decomposable": rep.decomposable}
    if rep.decomposable:
        out.update({"diameter": rep.diameter, "bound": rep.bound, "bound_holds": rep.holds})
        if args.certificate:
            decide = (decomposability.is_weakly_k_decomposable if args.weak
                      else decomposability.is_k_decomposable)
            cert = decide(C, args.k, args.budget).certificate
            out["certificate"] = ([list(S) for S in cert] if args.weak else cert.to_dict())
    _emit(args, out)
    if args.expect is not None:
        return EXIT_OK if rep.decomposable == (args.expect == "yes") else EXIT_ASSERT
    return EXIT_OK if not rep.decomposable or rep.holds else EXIT_ASSERT


# --- bounds ------------------------------------------------------------------

def cmd_bounds(args) -> int:
    rep = bounds.full_report(args.n, args.d, M=args.M, l=args.l, k=args.k, delta=args.delta)
    _emit(args, rep.to_csv() if args.format == "csv" else rep.to_dict())
    return EXIT_OK


# --- search ------------------------------------------------------------------

def cmd_search(args) -> int:
    if args.what == "johnson":
        _require(args, "n", "d")
        res = diameter.longest_induced_path_johnson(args.n, args.d, args.mode, args.budget,
                                                    seed=args.seed, restarts=args.restarts)
        out = {"schema": 1, "n": args.n, "d": args.d, "length": res.length, "exact": res.exact,
               "budget_exhausted": res.budget_exhausted, "nodes_explored": res.nodes_explored,
               "path": [list(f) for f in res.path.facets]}
        _emit(args, out)
        return EXIT_CAP if res.budget_exhausted else EXIT_OK
    _require(args, "l1", "l2")
    cells = constructions.product_induced_path(args.l1, args.l2, args.strategy)
    _emit(args, {"schema": 1, "l1": args.l1, "l2": args.l2, "strategy": args.strategy,
                 "length": len(cells) - 1,
                 "usage": len(cells) / ((args.l1 + 1) * (args.l2 + 1)),
                 "cells": [list(c) for c in cells]})
    return EXIT_OK


# --- verify-paper ------------------------------------------------------------

def cmd_verify(args) -> int:
    suite = ExperimentSuite()
    if args.list:
        _emit(args, {"checks": suite.names()})
        return EXIT_OK
    try:
        result = suite.run(args.scale, inject=args.inject)
    except ValueError as exc:
        raise InvalidComplex(str(exc)) from exc
    _emit(args, result.to_dict())
    for r in result.results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name} ({r.seconds:.2f}s)", file=sys.stderr)
    return EXIT_OK if result.passed else EXIT_ASSERT


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    common.add_argument("--out", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="diameter-lab", description=__doc__.splitlines()[0],
                                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a complex and write it as JSON or DOT")
    p.add_argument("kind", choices=["complete", "simplex-boundary", "corridor2", "join", "iterated-join",
                                    "nabla", "barycentric", "johnson-graph", "complete-clm",
                                    "injective-clm"])
    for flag in ("--n", "--d", "--k", "--a", "--b"):
        p.add_argument(flag, type=int)
    p.add_argument("--inputs", nargs="+", help="input JSON files (join, barycentric)")
    p.add_argument("--corridor", action="store_true", help="join: keep only an induced-path corridor")
    p.add_argument("--strategy", choices=["vertical", "zigzag"], default="vertical")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", parents=[common], help="run predicates and diameter checks on a file")
    p.add_argument("file")
    p.add_argument("--check", action="append", choices=sorted(PREDICATES))
    p.add_argument("--diameter", type=int, help="assert this dual diameter")
    p.add_argument("--show-diameter", action="store_true")
    p.add_argument("--check-clm", action="store_true", help="assert layered input is a valid c.l.m.")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("clm", parents=[common], help="layered multicomplexes and their relatives")
    p.add_argument("action", choices=["complete", "injective", "random", "search", "validate", "split",
                                      "substitute", "nonpure", "legal"])
    p.add_argument("file", nargs="?")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--substitute", action="store_true", help="replace multisets by sets")
    p.add_argument("--extend", type=int, default=0, help="nonpure: extensions of the 5-element example")
    p.add_argument("--sets", help="legal: sets separated by '/', e.g. '1,2/2/-'")
    p.add_argument("--double", type=int, help="legal: apply the doubling step with this i")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.set_defaults(func=cmd_clm)

    p = sub.add_parser("path", parents=[common], help="non-revisiting paths and segment certificates")
    p.add_argument("file")
    p.add_argument("--from", dest="source", type=_face)
    p.add_argument("--to", dest="target", type=_face)
    p.add_argument("--segment-to", type=_face, help="build a segment to this vertex set")
    p.add_argument("--anchor", type=int)
    p.add_argument("--all-pairs", action="store_true")
    p.add_argument("--allow-nonflag", action="store_true")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("decompose", parents=[common], help="(weak) k-decomposability")
    p.add_argument("file", nargs="?")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--weak", action="store_true")
    p.add_argument("--nabla", type=int, nargs=2, metavar=("A", "B"))
    p.add_argument("--obstruction", type=int, nargs=2, metavar=("A", "B"))
    p.add_argument("--budget", type=int)
    p.add_argument("--certificate", action="store_true")
    p.add_argument("--expect", choices=["yes", "no"])
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("bounds", parents=[common], help="table of bounds for the given parameters")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--M", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--delta", type=int)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("search", parents=[common], help="longest induced paths")
    p.add_argument("what", choices=["johnson", "grid"])
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--mode", choices=["exact", "heuristic"], default="exact")
    p.add_argument("--budget", type=int)
    p.add_argument("--restarts", type=int, default=200)
    p.add_argument("--l1", type=int)
    p.add_argument("--l2", type=int)
    p.add_argument("--strategy", choices=["vertical", "zigzag"], default="vertical")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify-paper", parents=[common], help="run the reference experiment suite")
    p.add_argument("--scale", choices=["small", "full"], default="full")
    p.add_argument("--inject", metavar="CHECK", help="corrupt this check's fixture")
    p.add_argument("--list", action="store_true", help="list check names")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except DiameterLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
