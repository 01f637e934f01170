"""
Command-line front end.

Exit codes: 0 success, 1 a checked identity failed, 2 unparseable input,
3 singular form, 4 unsupported splitting field.
"""

import argparse
import json
import sys
import time

from hasse_witt.arith import as_rational, place_str
from hasse_witt.clifford import UnsupportedSplittingField
from hasse_witt.galois_coh import SquareClass, parse_brauer
from hasse_witt.groupcoh import FiniteGroup, cohomology_dim
from hasse_witt.quadform import DiagonalForm, QuadraticForm, SingularFormError, diagonalize, local_data, w2
from hasse_witt.twists import (
    OrthCocycle,
    quadratic_cocycle,
    sign_matrix,
    swap_matrix,
    trace_form,
    verify_cor62,
)
from hasse_witt.universal import check_sq_identity, cq_class, det_class

EXIT_OK, EXIT_IDENTITY, EXIT_PARSE, EXIT_SINGULAR, EXIT_UNSUPPORTED = 0, 1, 2, 3, 4


class ParseError(ValueError):
    pass


def _rationals(text):
    try:
        return [as_rational(tok) for tok in text.split(",") if tok.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError("cannot parse rational list %r: %s" % (text, exc))


def _gram(text):
    try:
        rows = json.loads(text)
        return [[as_rational(str(x)) for x in row] for row in rows]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError("cannot parse Gram matrix %r: %s" % (text, exc))


def _form_from_args(args):
    if args.diag is not None:
        entries = _rationals(args.diag)
        if not entries:
            raise ParseError("empty diagonal")
        return DiagonalForm(tuple(entries))
    if args.gram is not None:
        return QuadraticForm(tuple(tuple(r) for r in _gram(args.gram)))
    raise ParseError("give --diag or --gram")


def _gram_str(q):
    return [[str(x) for x in row] for row in q.gram]


def _invariants_report(q):
    form = q.to_form() if isinstance(q, DiagonalForm) else q
    diag, _ = diagonalize(form, pivot="first")
    ld = local_data(form)
    return {
        "gram": _gram_str(form),
        "diagonal": [str(a) for a in diag.entries],
        "rank": ld.rank,
        "w1": str(ld.w1),
        "signature": list(ld.signature),
        "w2": str(w2(form)),
        "hasse": {place_str(v): s for v, s in sorted(ld.hasse.items())},
    }


# ---------------------------------------------------------------------------
# commands


def cmd_invariants(args):
    q = _form_from_args(args)
    return EXIT_OK, {"command": "invariants", "inputs": {"diag": args.diag, "gram": args.gram}, "result": _invariants_report(q)}


def _cocycle_from_args(args, q):
    n = q.dim
    if args.quadratic_swap is not None:
        d = args.quadratic_swap
        if n < 2 or q.entries[0] != q.entries[1]:
            raise ParseError("--quadratic-swap needs a form whose first two entries agree")
        return quadratic_cocycle(q, d, swap_matrix(n, 0, 1))
    if args.quadratic_signs is not None:
        d = args.quadratic_signs
        signs = [-1 if s.strip().startswith("-") else 1 for s in (args.signs or "").split(",") if s.strip()]
        if len(signs) != n:
            raise ParseError("--signs needs %d entries" % n)
        return quadratic_cocycle(q, d, sign_matrix(signs))
    if args.cocycle is not None:
        text = args.cocycle
        if not text.lstrip().startswith("{"):
            with open(text) as fh:
                text = fh.read()
        try:
            data = json.loads(text)
        except ValueError as exc:
            raise ParseError("bad cocycle JSON: %s" % exc)
        c = OrthCocycle.from_json(data)
        if c.form != q:
            raise ParseError("cocycle form %s differs from --diag %s" % (c.form, q))
        return c
    raise ParseError("give --quadratic-swap, --quadratic-signs or --cocycle")


def cmd_twist(args):
    q = _form_from_args(args)
    if not isinstance(q, DiagonalForm):
        q = q.as_diagonal() if q.is_diagonal() else None
        if q is None:
            raise ParseError("twist needs a diagonal form")
    try:
        c = _cocycle_from_args(args, q)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, (ParseError, UnsupportedSplittingField, SingularFormError)):
            raise
        raise ParseError(str(exc))
    rep = verify_cor62(q, c)
    out = {
        "command": "twist",
        "inputs": {"diag": args.diag, "cocycle": c.to_json()},
        "result": rep.to_dict(),
    }
    code = EXIT_OK if rep.ok else EXIT_IDENTITY
    return code, out


def cmd_verify(args):
    from hasse_witt.grid import default_grid, run_grid, small_grid

    cells = default_grid(seed=args.seed) if args.grid == "default" else small_grid()
    results = run_grid(cells, jobs=args.jobs)
    failures = [r for r in results if not r.ok]
    summary = {
        "cells": len(results),
        "w1_identity": sum(r.w1_identity for r in results),
        "delta2_two_route": sum(r.delta2_two_route for r in results),
        "bridge": sum(r.bridge for r in results),
        "failures": len(failures),
    }
    out = {
        "command": "verify",
        "inputs": {"grid": args.grid, "seed": args.seed},
        "result": summary,
        "counterexamples": [dict(name=r.name, error=r.error, **r.details) for r in failures],
    }
    # form x twist parameter: passing cells / cells
    matrix = {}
    for cell, r in zip(cells, results):
        row = matrix.setdefault(str(cell.form), {})
        passed, total = row.get("d=%d" % cell.d, (0, 0))
        row["d=%d" % cell.d] = (passed + r.ok, total + 1)
    out["matrix"] = {f: {d: "%d/%d" % pt for d, pt in row.items()} for f, row in matrix.items()}
    if args.cells:
        out["cells"] = [
            {"cell": r.name, "w1": r.w1_identity, "delta2": r.delta2_two_route, "bridge": r.bridge} for r in results
        ]
    if any(r.error and r.error.startswith("unsupported") for r in failures) and len(failures) == sum(
        1 for r in failures if r.error
    ):
        return EXIT_UNSUPPORTED, out
    return (EXIT_IDENTITY if failures else EXIT_OK), out


def cmd_traceform(args):
    coeffs = _rationals(args.coeffs)
    q = trace_form(coeffs)
    return EXIT_OK, {"command": "traceform", "inputs": {"coeffs": [str(c) for c in coeffs]}, "result": _invariants_report(q)}


def cmd_universal(args):
    try:
        a1 = SquareClass.of(as_rational(args.w1))
        a2 = parse_brauer(args.w2 or "")
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(str(exc))
    ok = check_sq_identity(a1, a2)
    out = {
        "command": "universal",
        "inputs": {"w1": str(a1), "w2": str(a2)},
        "result": {
            "det[q]": str(det_class(a1)),
            "[C_q]": str(cq_class(a1, a2)),
            "s_q_identity": ok,
        },
    }
    return (EXIT_OK if ok else EXIT_IDENTITY), out


def cmd_groupcoh(args):
    if args.cyclic is not None:
        g, name = FiniteGroup.cyclic(args.cyclic), "Z/%d" % args.cyclic
    elif args.elementary is not None:
        g, name = FiniteGroup.elementary_abelian(args.elementary), "(Z/2)^%d" % args.elementary
    elif args.dihedral is not None:
        g, name = FiniteGroup.dihedral(args.dihedral), "D_%d" % args.dihedral
    elif args.table is not None:
        with open(args.table) as fh:
            g, name = FiniteGroup.from_json(fh.read()), args.table
    else:
        raise ParseError("give --cyclic, --elementary, --dihedral or --table")
    out = {
        "command": "groupcoh",
        "inputs": {"group": name, "order": g.order},
        "result": {"dim H1": cohomology_dim(g, 1), "dim H2": cohomology_dim(g, 2)},
    }
    return EXIT_OK, out


# ---------------------------------------------------------------------------
# output


def _text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append("%s%s:" % (pad, k))
                lines.append(_text(v, indent + 1))
            else:
                lines.append("%s%s: %s" % (pad, k, _scalar(v)))
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append("%s-" % pad)
                lines.append(_text(v, indent + 1))
            else:
                lines.append("%s- %s" % (pad, _scalar(v)))
    return "\n".join(lines)


def _flat(v):
    if isinstance(v, dict):
        return False
    return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and all(not isinstance(y, (dict, list)) for y in x)) for x in v)


def _scalar(v):
    if v is True:
        return "✓"
    if v is False:
        return "✗"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join("%s: %s" % (k, _scalar(x)) for k, x in v.items()) + "}"
    return str(v)


def build_parser():
    p = argparse.ArgumentParser(prog="hasse-witt", description=__doc__.strip().splitlines()[0])
    p.add_argument("--json", action="store_true", help="emit the canonical JSON report")
    p.add_argument("--timing", action="store_true", help="add wall-clock time to the report")
    sub = p.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)

    def form_opts(sp):
        sp.add_argument("--diag", help="diagonal entries, e.g. 2,6 or '1/2,-3' (use --diag=-1,-1 for a leading minus)")
        sp.add_argument("--gram", help='Gram matrix as JSON, e.g. "[[0,1],[1,0]]"')

    sp = sub.add_parser("invariants", parents=[common], help="rank, w1, signature, w2 and Hasse signs of a form")
    form_opts(sp)
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("twist", parents=[common], help="twist a form by a cocycle and check the twist formulas")
    form_opts(sp)
    sp.add_argument("--quadratic-swap", type=int, metavar="D", help="c(σ) = swap of the first two coordinates over Q(√D)")
    sp.add_argument("--quadratic-signs", type=int, metavar="D", help="c(σ) = diag(--signs) over Q(√D)")
    sp.add_argument("--signs", help="comma list of + / - for --quadratic-signs")
    sp.add_argument("--cocycle", help="cocycle JSON (inline or a file path)")
    sp.set_defaults(func=cmd_twist)

    sp = sub.add_parser("verify", parents=[common], help="run the two-route verification grid")
    sp.add_argument("--grid", choices=("default", "small"), default="default")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--cells", action="store_true", help="also list every cell with its three flags")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("traceform", parents=[common], help="trace form of Q[x]/(f)")
    sp.add_argument("coeffs", help="coefficients, highest degree first, e.g. 1,0,-3")
    sp.set_defaults(func=cmd_traceform)

    sp = sub.add_parser("universal", parents=[common], help="det[q], [C_q] and the s_q identity for given w1, w2")
    sp.add_argument("--w1", required=True, help="square class representative")
    sp.add_argument("--w2", default="", help="ramified places, e.g. 2,3 or 2,inf")
    sp.set_defaults(func=cmd_universal)

    sp = sub.add_parser("groupcoh", parents=[common], help="dim H^1, H^2 of a finite group with F2 coefficients")
    sp.add_argument("--cyclic", type=int)
    sp.add_argument("--elementary", type=int)
    sp.add_argument("--dihedral", type=int)
    sp.add_argument("--table", help='JSON file {"table": [[...]], "identity": 0}')
    sp.set_defaults(func=cmd_groupcoh)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    start = time.perf_counter()
    try:
        code, report = args.func(args)
    except SingularFormError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_SINGULAR
    except UnsupportedSplittingField as exc:
        print("error: unsupported splitting field: %s" % exc, file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ParseError, ValueError, TypeError, ZeroDivisionError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    if args.timing:
        report["timing_s"] = round(time.perf_counter() - start, 3)
    if args.json:
        print(json.dumps(report, ensure_ascii=False, indent=2))
    else:
        print(_text(report))
    if code == EXIT_IDENTITY:
        print("identity check FAILED", file=sys.stderr)
    return code


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
