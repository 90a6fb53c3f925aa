"""
Command-line front end.

Exit codes: 0 success, 1 usage error, 2 mathematical precondition failure
(for example a non-acyclic complex), 3 internal cross-check failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analytic, corpus
from .chain_complex import BasedChainComplex, homology_ranks, specialize
from .errors import NonAcyclicError, TorsionError
from .group_ring import Representation
from .spaces import (LensSpace, franz_search, homeomorphic_3d,
                     homotopy_equivalent, lens_torsion, profiles_match,
                     simple_homotopy_equivalent, torsion_profile)
from .torsion import laplacian_torsion, torsion_alternating, torsion_contraction, torsion_milnor

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_CHECK = 0, 1, 2, 3
DEFAULT_TOL = 1e-9
METHODS = ("milnor", "contraction", "alternating", "laplacian")


class UsageError(Exception):
    pass


class CrossCheckError(Exception):
    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _positive_float(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("tolerance must be > 0")
    return x


def _rep(text: str) -> Representation:
    try:
        return Representation.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def _load_complex(ref: str) -> BasedChainComplex:
    path = Path(ref)
    if path.is_file():
        data = json.loads(path.read_text())
    else:
        try:
            data = corpus.load_fixture_json(ref)
        except FileNotFoundError:
            raise UsageError(f"no such file or fixture: {ref}")
    return BasedChainComplex.from_json(data)


def _scalar_json(x: float) -> dict:
    return {"value": x, "modulus_squared": x * x}


def cmd_complex(args) -> dict:
    C = _load_complex(args.file)
    if C.ring.kind == "cyclic":
        if args.rep is None:
            raise UsageError("a group-ring complex needs --rep")
        Cc = specialize(C, args.rep)
    else:
        Cc = C.to_complex()
    hr = homology_ranks(Cc)
    report = {"file": args.file, "ranks": list(C.ranks), "homology_ranks": hr,
              "rep": args.rep.to_json() if args.rep else None, "torsion": {}}
    methods = METHODS if args.method == "all" else (args.method,)
    if any(hr) and methods != ("laplacian",):
        raise NonAcyclicError(f"non-acyclic complex (homology ranks {hr}); no homology basis given")
    moduli = {}
    for m in methods:
        if m == "milnor":
            t = torsion_milnor(Cc)
            report["torsion"][m], moduli[m] = t.to_json(), abs(t.value)
        elif m == "contraction":
            t = torsion_contraction(Cc)
            report["torsion"][m], moduli[m] = t.to_json(), abs(t.value)
        elif m == "alternating":
            x = torsion_alternating(Cc)
            report["torsion"][m], moduli[m] = _scalar_json(x), x
        else:
            x, _ = laplacian_torsion(Cc)
            report["torsion"][m], moduli[m] = _scalar_json(x), x
    if len(methods) > 1:
        agreement = {a: {b: abs(moduli[a] - moduli[b]) / max(moduli[b], 1e-300) for b in methods}
                     for a in methods}
        worst = max(v for row in agreement.values() for v in row.values())
        report["agreement"] = agreement
        report["max_rel_difference"] = worst
        if worst > args.tol:
            raise CrossCheckError(f"torsion methods disagree (max relative difference {worst:.3e})",
                                  report)
    return report


def _lens(p, q) -> LensSpace:
    try:
        return LensSpace(p, q)
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_lens(args) -> dict:
    L = _lens(args.p, args.q)
    report = {"lens": L.to_json(), "r": list(L.r)}
    if args.profile:
        report["profile"] = torsion_profile(L)
        return report
    if L.p < 2:
        raise NonAcyclicError("p = 1 has no nontrivial eta")
    if args.eta is not None:
        if args.eta % L.p == 0:
            raise NonAcyclicError("eta = 1: the twisted complex is not acyclic")
        ks = [args.eta % L.p]
    else:
        ks = list(range(1, L.p))
    rows = []
    for k in ks:
        t = lens_torsion(L, Representation.root_of_unity(L.p, k))
        rows.append({"k": k, "torsion": t.to_json(), "r_torsion": t.modulus_squared})
    report["torsions"] = rows
    return report


def cmd_classify(args) -> dict:
    L, Lp = _lens(args.p, args.q1), _lens(args.p, args.q2)
    if L.n != Lp.n:
        raise UsageError("--q1 and --q2 must have the same length")
    h, m = homotopy_equivalent(L, Lp, args.marked)
    s, witness = simple_homotopy_equivalent(L, Lp, args.marked)
    match, profile_m = profiles_match(L, Lp, args.marked, tol=max(args.tol, 1e-12))
    homeo = None
    if L.n == 2:
        # L(p; a, b) = L(p; 1, b / a)
        q = (L.q[1] * pow(L.q[0], -1, L.p)) % L.p if L.p > 1 else 0
        qp = (Lp.q[1] * pow(Lp.q[0], -1, Lp.p)) % Lp.p if Lp.p > 1 else 0
        homeo = homeomorphic_3d(L.p, q, qp) if L.p > 1 else True
    if match != s:
        raise CrossCheckError("torsion profiles disagree with the simple homotopy criterion",
                              {"simple_homotopy": s, "profiles_match": match})
    return {
        "lens1": L.to_json(), "lens2": Lp.to_json(), "marked": args.marked,
        "homotopy": h, "witness_m": m,
        "simple_homotopy": s,
        "simple_witness": ({"m": witness[0], "permutation": list(witness[1]),
                            "signs": list(witness[2])} if s else None),
        "profiles_match": match, "profile_m": profile_m,
        "homeomorphic_3d": homeo,
    }


def cmd_circle(args) -> dict:
    bundle = analytic.CircleBundle(args.psi)
    if args.cells < 1:
        raise UsageError("--cells must be >= 1")
    cellular = analytic.cellular_cochain_torsion(bundle, args.cells)
    report = {"psi": args.psi, "cells": args.cells, "cellular": cellular,
              "det_laplacian": None, "rs_torsion": None, "rel_error": None}
    if args.compare_analytic:
        rep = analytic.cheeger_muller_report(bundle, args.cells)
        report.update(rep.to_json())
        if rep.rel_error > args.tol:
            raise CrossCheckError(f"Cheeger-Mueller mismatch: relative error {rep.rel_error:.3e}",
                                  report)
    return report


def cmd_franz(args) -> dict:
    if args.p < 3:
        raise UsageError("--p must be >= 3")
    if args.bound < 0:
        raise UsageError("--bound must be >= 0")
    sols = franz_search(args.p, args.bound)
    # each solution as the vector (a_1, ..., a_{p-1}); non-units carry 0
    vectors = [[sol.get(j, 0) for j in range(1, args.p)] for sol in sols]
    return {"p": args.p, "bound": args.bound, "solutions": vectors,
            "only_zero": all(not any(v) for v in vectors)}


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    if isinstance(x, dict) and set(x) == {"re", "im"}:
        return f"{x['re']:.12g}{x['im']:+.12g}i"
    if isinstance(x, (dict, list)):
        return json.dumps(x, sort_keys=True)
    return str(x)


def _flatten(obj, prefix=""):
    if isinstance(obj, dict) and not (set(obj) == {"re", "im"}):
        for key in sorted(obj):
            yield from _flatten(obj[key], f"{prefix}.{key}" if prefix else str(key))
    elif isinstance(obj, list) and obj and all(isinstance(x, dict) for x in obj):
        for i, x in enumerate(obj):
            yield from _flatten(x, f"{prefix}[{i}]")
    else:
        yield prefix, obj


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2)
    rows = list(_flatten(report))
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k:<{width}}  {_fmt(v)}" for k, v in rows)


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_positive_float, default=argparse.SUPPRESS,
                        help=f"cross-check tolerance (default {DEFAULT_TOL:g})")
    common.add_argument("--format", choices=("json", "table"), default=argparse.SUPPRESS)

    parser = _Parser(prog="rtorsion", parents=[common],
                     description="Reidemeister, R- and analytic torsion computations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("complex", parents=[common], help="torsion of a chain complex from JSON")
    p.add_argument("--file", required=True, help="JSON file or the name of a bundled fixture")
    p.add_argument("--rep", type=_rep, default=None, help="eta:P:K | angle:PSI | complex:RE,IM")
    p.add_argument("--method", choices=METHODS + ("all",), default="all")
    p.set_defaults(func=cmd_complex)

    p = sub.add_parser("lens", parents=[common], help="lens space torsions")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=_int_list, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--eta", type=int, help="evaluate at exp(2 pi i K / p)")
    g.add_argument("--all-eta", action="store_true")
    g.add_argument("--profile", action="store_true")
    p.set_defaults(func=cmd_lens)

    p = sub.add_parser("classify", parents=[common], help="compare two lens spaces")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q1", type=_int_list, required=True)
    p.add_argument("--q2", type=_int_list, required=True)
    p.add_argument("--marked", action="store_true", help="preserve the preferred generator")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("circle", parents=[common], help="twisted circle, cellular vs analytic")
    p.add_argument("--psi", type=float, required=True)
    p.add_argument("--cells", type=int, default=1)
    p.add_argument("--compare-analytic", action="store_true")
    p.set_defaults(func=cmd_circle)

    p = sub.add_parser("franz", parents=[common], help="search for Franz exponent vectors")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(func=cmd_franz)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # usage errors and --help: return the code so main() is callable in-process
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    args.tol = getattr(args, "tol", DEFAULT_TOL)
    args.format = getattr(args, "format", "json")
    try:
        report = args.func(args)
    except UsageError as exc:
        print(f"rtorsion: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CrossCheckError as exc:
        print(render(exc.report, args.format))
        print(f"rtorsion: cross-check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (TorsionError, ZeroDivisionError) as exc:
        msg = str(exc)
        if isinstance(exc, NonAcyclicError) and "non-acyclic" not in msg:
            msg = f"non-acyclic: {msg}"
        print(f"rtorsion: error: {msg}", file=sys.stderr)
        return EXIT_MATH
    print(render(report, args.format))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
