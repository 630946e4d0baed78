"""Command line front end.

Exit status: 0 when the check passes (or the simplex is empty), 1 when a
property fails (or the simplex is not empty), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction

from sympy import primerange

from . import fpdigits, mmmfamilies, simplexcore, surveyor, widthcalc
from .exactalg import SuperLattice, group_structure
from .simplexcore import CyclicSimplexSpec, GeneralSimplex, NonCyclicQuotient

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _frac(x: Fraction) -> str:
    return str(x)


def _point(p) -> str:
    return "(" + ",".join(map(_frac, p)) + ")"


def _simplex_input(args):
    """Either a CyclicSimplexSpec or a GeneralSimplex from --det/--gen or --vertices."""
    if args.vertices:
        if args.det is not None or args.gen is not None:
            raise UsageError("give either --vertices or --det/--gen, not both")
        return GeneralSimplex.read(args.vertices)
    if args.det is None or args.gen is None:
        raise UsageError("need --det N --gen a1,a2,a3,a4 or --vertices FILE")
    return CyclicSimplexSpec(args.det, args.gen)


def _add_simplex_args(p):
    p.add_argument("--det", type=int, help="determinant N of the standard form")
    p.add_argument("--gen", type=_ints, help="generator residues a1,a2,a3,a4")
    p.add_argument("--vertices", help="file with five lines of four integers")


def cmd_empty(args):
    s = _simplex_input(args)
    inputs = {"det": args.det, "gen": args.gen, "vertices": args.vertices}
    if isinstance(s, GeneralSimplex):
        std = simplexcore.to_standard_form(s, args.pivot)
        if isinstance(std, NonCyclicQuotient):
            res = simplexcore.is_empty_general(std.lattice)
            extra = {"group": list(std.group.invariant_factors), "cyclic": False}
        else:
            res = simplexcore.is_empty(std)
            extra = {"spec": {"N": std.N, "a": list(std.a)}, "cyclic": True}
    else:
        res = simplexcore.is_empty(s)
        extra = {}
    result = {"empty": res.empty, **extra}
    if res.empty:
        lines = ["empty"]
    else:
        result.update(k=res.k, point=[_frac(x) for x in res.point])
        lines = [f"not empty; witness k={res.k} point {_point(res.point)}"]
    return (EXIT_OK if res.empty else EXIT_FAIL), inputs, result, lines


def cmd_width(args):
    s = _simplex_input(args)
    inputs = {"det": args.det, "gen": args.gen, "vertices": args.vertices}
    if isinstance(s, GeneralSimplex):
        cert = widthcalc.width_general(s)
    else:
        cert = widthcalc.width(s)
    lines = [f"width {cert.width}",
             f"functional {_point(cert.functional)}",
             f"vertex values {_point(cert.vertex_values)}"]
    return EXIT_OK, inputs, cert.as_dict(), lines


def cmd_canon(args):
    s = _simplex_input(args)
    inputs = {"det": args.det, "gen": args.gen, "vertices": args.vertices, "pivot": args.pivot}
    if isinstance(s, GeneralSimplex):
        s = simplexcore.to_standard_form(s, args.pivot)
        if isinstance(s, NonCyclicQuotient):
            raise UsageError(f"quotient group {s.group} is not cyclic; no canonical form")
    form = simplexcore.canonical_form(s)
    return EXIT_OK, inputs, {"N": form.N, "tuple5": list(form.tuple5)}, [f"canonical {form}"]


def cmd_group(args):
    inputs = {"vertices": args.vertices, "denominator": args.denominator,
              "gen": [list(g) for g in args.gen or []]}
    if args.vertices:
        std = simplexcore.to_standard_form(GeneralSimplex.read(args.vertices))
        lat = std.lattice if isinstance(std, NonCyclicQuotient) else std.lattice()
    elif args.denominator:
        gens = args.gen or []
        dims = {len(g) for g in gens} or {4}
        if len(dims) != 1:
            raise UsageError("generators must all have the same length")
        lat = SuperLattice.from_numerators(dims.pop(), args.denominator, gens)
    else:
        raise UsageError("need --vertices FILE or --denominator M [--gen ...]")
    g = group_structure(lat)
    result = {"invariant_factors": list(g.invariant_factors), "order": g.order, "cyclic": g.is_cyclic}
    lines = [f"group {g} order {g.order} {'cyclic' if g.is_cyclic else 'non-cyclic'}"]
    return EXIT_OK, inputs, result, lines


def cmd_fp_scan(args):
    primes = [p for p in primerange(2, args.pmax + 1) if not (args.lemma == 2 and p == 2)]
    if not primes:
        raise UsageError("no primes in range")
    reports = [fpdigits.VERIFIERS[args.lemma](p) for p in primes]
    noun = "planes" if args.lemma == 3 else "lines"
    checked = "+".join(str(r.subspaces_checked) for r in reports)
    failures = sum(r.failures for r in reports)
    lines = [f"p={r.prime}: {r.subspaces_checked} {noun}, max m {r.max_m}, failures {r.failures}"
             for r in reports]
    lines.append(f"{noun} checked: {checked}, failures: {failures}")
    result = {"reports": [r.as_dict() for r in reports], "failures": failures}
    return (EXIT_OK if failures == 0 else EXIT_FAIL), {"lemma": args.lemma, "pmax": args.pmax}, result, lines


def _instance(args):
    if args.family:
        if args.params is None:
            raise UsageError("--family needs --params")
        return mmmfamilies.family_parametric(args.family, args.params, args.n, args.j)
    if args.row is None:
        raise UsageError("need --row R or --family i|ii")
    table = mmmfamilies.load_table()
    if not 1 <= args.row <= len(table):
        raise UsageError(f"--row must be in 1..{len(table)}")
    return mmmfamilies.instantiate(table[args.row - 1], args.j, args.k, args.n)


def cmd_mmm(args):
    action = args.action
    if action == "verify":
        table = mmmfamilies.load_table()
        reps = [mmmfamilies.verify_quintuple(q) for q in table]
        bad = [(q.ident, r.failures) for q, r in zip(table, reps) if not r.ok]
        nrel = sum(len(q.relations) for q in table)
        lines = [f"{len(table)} quintuples, "
                 + ("all relations orthogonal" if not bad else f"{len(bad)} failing rows")]
        lines += [f"{ident}: {f}" for ident, f in bad]
        result = {"quintuples": len(table), "relations": nrel, "failures": bad}
        return (EXIT_OK if not bad else EXIT_FAIL), {}, result, lines
    if action in ("gen", "certify"):
        inst = _instance(args)
        inputs = {"row": args.row, "family": args.family, "params": args.params,
                  "j": args.j, "k": args.k, "n": args.n}
        spec = inst.spec
        empty = simplexcore.is_empty(spec).empty
        result = {"label": inst.label(), "N": spec.N, "a": list(spec.a), "empty": empty}
        lines = [f"{inst.label()} n={spec.N}: spec {spec}, {'empty' if empty else 'not empty'}"]
        if action == "certify":
            cert = mmmfamilies.certify_instance(inst)
            opt = widthcalc.width(spec)
            result.update(certificate=cert.as_dict(), optimal_width=opt.width)
            lines.append(f"certificate {_point(cert.functional)} spread {cert.width}; optimal width {opt.width}")
            ok = opt.width <= cert.width <= 2
            return (EXIT_OK if ok else EXIT_FAIL), inputs, result, lines
        return EXIT_OK, inputs, result, lines
    if action == "sweep":
        rep = mmmfamilies.sweep_table(args.max_n)
        lines = [f"instances {rep.instances}, empty {rep.empty}, widths {rep.width_histogram}, "
                 f"violations {len(rep.certificate_violations)}"]
        lines += rep.certificate_violations[:20]
        return (EXIT_OK if rep.ok else EXIT_FAIL), {"max_n": args.max_n}, rep.as_dict(), lines
    if action == "noncyclic":
        reps = [mmmfamilies.search_noncyclic_terminal(p) for p in primerange(2, args.pmax + 1)]
        lines = [f"p={r.prime}: planes {r.planes_checked}, empty {r.empty_found}, "
                 f"witness failures {r.witness_failures}, plane-bound failures {r.lemma3_failures}"
                 for r in reps]
        ok = all(r.ok for r in reps)
        return (EXIT_OK if ok else EXIT_FAIL), {"pmax": args.pmax}, {"reports": [r.as_dict() for r in reps]}, lines
    raise UsageError(f"unknown mmm action {action}")


def cmd_survey(args):
    summary, records = surveyor.survey(args.max_det, args.out, jobs=args.jobs, resume=args.resume)
    d = summary.as_dict()
    lines = [f"N<={summary.completed_through}: {summary.classes} empty classes, widths "
             + ", ".join(f"{w}: {c}" for w, c in sorted(summary.totals.items()))]
    if summary.partial:
        lines.append(f"PARTIAL: budget stopped at N={summary.completed_through} "
                     f"(raise SIMPLEXLAB_MAX_DET to go further)")
    for r in records:
        if r.width >= 3:
            lines.append(f"width {r.width}: {r.form}")
    inputs = {"max_det": args.max_det, "out": args.out, "jobs": args.jobs}
    return EXIT_OK, inputs, d, lines


def cmd_counterexample5(args):
    lat = simplexcore.dim5_counterexample(args.p, args.a, args.b)
    g = group_structure(lat)
    res = simplexcore.is_empty_general(lat)
    ok = not g.is_cyclic and res.empty
    lines = [f"group {g} {'non-cyclic' if not g.is_cyclic else 'cyclic'}; "
             f"simplex {'empty' if res.empty else 'not empty'}"]
    result = {"invariant_factors": list(g.invariant_factors), "cyclic": g.is_cyclic, "empty": res.empty}
    if not res.empty:
        result["point"] = [_frac(x) for x in res.point]
    return (EXIT_OK if ok else EXIT_FAIL), {"p": args.p, "a": args.a, "b": args.b}, result, lines


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit one JSON document")
    parser = argparse.ArgumentParser(prog="simplexlab", parents=[common],
                                     description="Empty lattice simplices in dimension 4.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("empty", parents=[common], help="emptiness test with witness")
    _add_simplex_args(p)
    p.add_argument("--pivot", type=int, default=0)
    p.set_defaults(func=cmd_empty)

    p = sub.add_parser("width", parents=[common], help="optimal lattice width")
    _add_simplex_args(p)
    p.set_defaults(func=cmd_width)

    p = sub.add_parser("canon", parents=[common], help="canonical form")
    _add_simplex_args(p)
    p.add_argument("--pivot", type=int, default=0)
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("group", parents=[common], help="invariant factors of D/Z^d")
    p.add_argument("--vertices")
    p.add_argument("--denominator", type=int)
    p.add_argument("--gen", type=_ints, action="append", help="numerator vector (repeatable)")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("fp-scan", parents=[common], help="digit-sum bounds over Z_p")
    p.add_argument("--lemma", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--pmax", type=int, required=True)
    p.set_defaults(func=cmd_fp_scan)

    p = sub.add_parser("mmm", parents=[common], help="quintuple table and families")
    p.add_argument("action", choices=("verify", "gen", "sweep", "certify", "noncyclic"))
    p.add_argument("--row", type=int, help="table row 1..29")
    p.add_argument("--family", choices=("i", "ii"))
    p.add_argument("--params", type=_ints, help="x,y[,z] numerators over n")
    p.add_argument("--j", type=int, default=5, help="dropped coordinate 1..5")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--max-n", type=int, default=60)
    p.add_argument("--pmax", type=int, default=7)
    p.set_defaults(func=cmd_mmm)

    p = sub.add_parser("survey", parents=[common], help="census of empty classes")
    p.add_argument("--max-det", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--resume", action="store_true")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("counterexample5", parents=[common], help="non-cyclic empty 5-simplex")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.set_defaults(func=cmd_counterexample5)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    as_json = getattr(args, "json", False)
    start = time.perf_counter()
    try:
        code, inputs, result, lines = args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        # library precondition failures (bad spec, degenerate simplex, unreadable file)
        if as_json:
            print(json.dumps({"command": args.command, "error": str(exc), "exit": EXIT_USAGE}))
        print(f"simplexlab {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if as_json:
        envelope = {"command": args.command, "inputs": inputs, "result": result,
                    "exit": code, "elapsed_s": round(time.perf_counter() - start, 4)}
        print(json.dumps(envelope, default=str))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
