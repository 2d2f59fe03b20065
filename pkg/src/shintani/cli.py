"""``shintani`` command line.

Results are JSON on stdout; errors are one JSON object on stderr.  Short
human-readable summaries go to stderr as well so stdout stays parseable;
``--quiet`` drops them.  All indices in JSON are 1-based.

Exit codes: 0 success, 1 verification disagreement, 2 invalid input
(validation, subset cap, outside the convergence region), 3 infeasible
decomposition instance.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import InfeasibleInstance, ShintaniError
from .matrix_core import load_matrix, skeleton
from .poles import enumerate_pole_families
from .polyhedra import check_cap, nonempty_subsets, verify_polyhedron_equality
from .weights import decompose_flow, decompose_graph, load_instance
from .zeta import EvalRequest, eval_zeta, mellin_cross_check_1d

EXIT_OK, EXIT_DISAGREE, EXIT_INVALID, EXIT_INFEASIBLE = 0, 1, 2, 3


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False, allow_nan=False)


class _Out:
    def __init__(self, quiet: bool, stdout, stderr):
        self.quiet, self.stdout, self.stderr = quiet, stdout, stderr

    def result(self, obj) -> None:
        print(dumps(obj), file=self.stdout)

    def note(self, line: str) -> None:
        if not self.quiet:
            print(line, file=self.stderr)

    def error(self, payload: dict) -> None:
        print(json.dumps(payload, ensure_ascii=False), file=self.stderr)


def parse_exponents(values) -> tuple:
    out = []
    for v in values:
        for piece in v.replace(",", " ").split():
            z = complex(piece.replace("i", "j"))
            out.append(z.real if z.imag == 0 else z)
    return tuple(out)


def cmd_analyze(args, out: _Out) -> int:
    a = load_matrix(args.matrix)
    report = enumerate_pole_families(a)
    if not args.skeleton:
        out.result(report.to_json())
    else:
        skel = skeleton(a)
        skel_report = enumerate_pole_families(skel)
        same = dumps(report.to_json()) == dumps(skel_report.to_json())
        out.result({"report": report.to_json(), "skeleton": skel.to_json(), "skeleton_report_equal": same})
        if not same:
            out.note("skeleton report differs from the matrix report")
            return EXIT_DISAGREE
    out.note(f"{len(report.families)} pole families for a {a.rows}x{a.cols} matrix")
    return EXIT_OK


def cmd_verify(args, out: _Out) -> int:
    a = load_matrix(args.matrix)
    check_cap(a.cols)
    reports = [verify_polyhedron_equality(a, J, args.samples, args.seed) for J in nonempty_subsets(range(a.cols))]
    passed = all(r.passed for r in reports)
    out.result({
        "samples": args.samples,
        "seed": args.seed,
        "passed": passed,
        "subsets": [r.to_json() for r in reports],
    })
    bad = sum(len(r.disagree) for r in reports)
    out.note(f"{len(reports)} column subsets, {bad} disagreements")
    return EXIT_OK if passed else EXIT_DISAGREE


def cmd_decompose(args, out: _Out) -> int:
    inst = load_instance(args.instance)
    build = decompose_graph if args.algorithm == "graph" else decompose_flow
    dec = build(inst)
    problems = dec.violations(inst)
    out.result({"algorithm": args.algorithm, "strict": inst.strict, **dec.to_json(), "valid": not problems})
    out.note(f"{inst.m} parts via {args.algorithm}" + ("" if not problems else f"; {problems[0]}"))
    return EXIT_OK


def cmd_eval(args, out: _Out) -> int:
    a = load_matrix(args.matrix)
    kw = {"rel_tol": args.tol} if args.tol is not None else {}
    req = EvalRequest(a, parse_exponents(args.s), max_terms_per_axis=args.max_terms,
                      extrapolate=not args.no_extrapolate, **kw)
    res = eval_zeta(req)
    out.result(res.to_json())
    out.note(f"value {res.value} ({'converged' if res.converged else 'not converged'}, cutoff {res.cutoff})")
    return EXIT_OK


def cmd_mellin_check(args, out: _Out) -> int:
    res = mellin_cross_check_1d(args.s, args.quad_points, args.cutoff)
    out.result(res)
    out.note(f"|lhs - rhs| = {res['abs_diff']:.3g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="shintani", description=__doc__.splitlines()[0])
    p.add_argument("--quiet", action="store_true", help="suppress summary lines")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("analyze", help="pole families and convergence region")
    q.add_argument("matrix")
    q.add_argument("--skeleton", action="store_true", help="also analyze the zero pattern and compare")
    q.set_defaults(func=cmd_analyze)

    q = sub.add_parser("verify", help="flow oracle vs halfspace test for every column subset")
    q.add_argument("matrix")
    q.add_argument("--samples", type=int, default=1000)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("decompose", help="split a weight vector over a set family")
    q.add_argument("instance")
    q.add_argument("--algorithm", choices=("graph", "flow"), default="graph")
    q.set_defaults(func=cmd_decompose)

    q = sub.add_parser("eval", help="numerical value of the zeta series")
    q.add_argument("matrix")
    q.add_argument("--s", nargs="+", required=True, help="exponents, e.g. --s 1 2 or --s 2+1j,2")
    q.add_argument("--tol", type=float, default=None, help="relative tolerance")
    q.add_argument("--max-terms", type=int, default=None, help="cap on the cutoff per axis")
    q.add_argument("--no-extrapolate", action="store_true", help="plain box sums, no acceleration")
    q.set_defaults(func=cmd_eval)

    q = sub.add_parser("mellin-check", help="zeta(s) Gamma(s) against its Mellin integral")
    q.add_argument("--s", type=float, required=True)
    q.add_argument("--quad-points", type=int, default=10000)
    q.add_argument("--cutoff", type=float, default=40.0)
    q.set_defaults(func=cmd_mellin_check)
    return p


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    out = _Out(args.quiet, stdout, stderr)
    try:
        return args.func(args, out)
    except InfeasibleInstance as exc:
        out.error(exc.to_dict())
        return EXIT_INFEASIBLE
    except ShintaniError as exc:
        out.error(exc.to_dict())
        return EXIT_INVALID
    except OSError as exc:
        out.error({"error": "FileError", "message": str(exc)})
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
