"""Command-line front end.

Every command prints (or writes with ``--out``) a JSON report, except
``sample`` and ``enumerate --out *.csv`` which emit CSV.  Exit status is
0 on success, 1 when a check fails or the parameters do not give a valid
structure, and 2 for malformed input.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import calabi, invariants, orthotoric as ot
from .errors import BHEError
from .exactalg import as_rational
from .io import atomic_write, dumps_json, grid_to_csv, read_json, rows_to_csv, structure_from_dict, structure_to_dict

COMMANDS = ("verify", "cgms", "legendre", "enumerate", "calabi-check", "futaki",
            "pairings", "slope", "sample")


class InputError(Exception):
    """Malformed command-line or file input (exit code 2)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError, TypeError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _grid(text: str) -> tuple[int, int]:
    try:
        nx, ny = (int(p) for p in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 128x128, got {text!r}") from None
    if nx < 8 or ny < 8:
        raise argparse.ArgumentTypeError("grid dimensions must be at least 8")
    return nx, ny


def _quad_order(text: str) -> int:
    q = int(text)
    if q < 8:
        raise argparse.ArgumentTypeError("quad order must be at least 8")
    return q


def _int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file; explicit flags take precedence")
    common.add_argument("--input", help="JSON input file")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--grid", type=_grid, default=(128, 128), help="NxM interior grid")
    common.add_argument("--quad-order", type=_quad_order, default=96)
    common.add_argument("--tol", type=float, default=1e-10)

    p = _Parser(prog="bhe-toric", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("verify", parents=[common], help="verify a structure JSON")

    s = sub.add_parser("cgms", parents=[common], help="theta-free family from (a, b, c)")
    for name in ("a", "b", "c"):
        s.add_argument(f"--{name}", type=int, required=True)

    s = sub.add_parser("legendre", parents=[common], help="normalized quadrilateral profiles")
    s.add_argument("--vertices", type=_int_list, required=True, help="y1,y2,x1,x2 (use --vertices=-2,-1,1,2 when the first is negative)")
    s.add_argument("--t1", type=_rational, default=Fraction(1))
    s.add_argument("--t2", type=_rational, default=Fraction(1))
    s.add_argument("--theta-free", action="store_true",
                   help="report the two solutions with t1/t2 a root of f")

    s = sub.add_parser("enumerate", parents=[common], help="enumerate integer families")
    s.add_argument("--family", choices=("cgms", "quadrilateral"), required=True)
    s.add_argument("--max-param", type=int, default=10, help="bound on a, b, c or on |vertex|")
    s.add_argument("--t-bound", type=int, default=None, help="bound on t1, t2 (default: max-param)")
    s.add_argument("--max-results", type=int, default=None)

    s = sub.add_parser("calabi-check", parents=[common], help="residual and Futaki integrals of a profile")
    s.add_argument("--samelson", type=_rational, nargs=2, metavar=("C", "S"),
                   help="use the product profile instead of --input")
    s.add_argument("--nodes", type=int, default=1000)

    s = sub.add_parser("futaki", parents=[common], help="Futaki obstruction closed forms")
    s.add_argument("--k", type=_rational, required=True)
    s.add_argument("--c", type=_rational, required=True)
    s.add_argument("--v", type=int, required=True)
    s.add_argument("--w", type=int, required=True)
    s.add_argument("--s", type=_rational, default=None, help="s_sigma (needed for k = 0)")

    sub.add_parser("pairings", parents=[common], help="polytope pairings and topology gate")

    s = sub.add_parser("slope", parents=[common], help="non-Archimedean slope")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--K", type=float, default=None, dest="K_rel_sq_A")
    s.add_argument("--B", type=float, default=None, dest="B_sq_A")
    s.add_argument("--A", type=float, default=None, dest="A_top")
    s.add_argument("--c-ab", type=float, default=None, dest="c_ab")

    s = sub.add_parser("sample", parents=[common], help="sample a field to CSV")
    s.add_argument("--field", choices=sorted(ot.FIELDS), default="scalar-curvature")
    return p


def _merge_config(argv: list[str]) -> list[str]:
    """Insert ``--key value`` pairs from a config file before the explicit flags."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise InputError("--config needs a path")
    path = argv[i + 1]
    extra: list[str] = []
    try:
        with open(path, encoding="utf-8") as fh:
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise InputError(f"{path}: expected key=value, got {line!r}")
                key, value = (t.strip() for t in line.split("=", 1))
                flag = "--" + key.replace("_", "-")
                if value.lower() == "true":
                    extra.append(flag)
                else:
                    extra += [flag, value]
    except OSError as exc:
        raise InputError(f"cannot read config: {exc}") from None
    # command name stays first; argparse keeps the last occurrence of a flag
    return argv[:1] + extra + argv[1:]


def _load_structure(args):
    if not args.input:
        raise InputError("--input is required")
    try:
        return structure_from_dict(read_json(args.input))
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"cannot read structure: {exc}") from None
    except BHEError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _structure_report(S, args) -> tuple[dict, bool]:
    nx, ny = args.grid
    rep = ot.verify_solution(S, nx, ny, args.tol)
    body = {"structure": structure_to_dict(S), "verification": rep.to_dict()}
    if S.is_quadratic:
        A, B = S.quadratics()
        body["residual_constant"] = ot.quadratic_residual_constant(A, B, S.lambda_sq)
        body["x_roots"] = [str(r) if not hasattr(r, "lo") else [str(r.lo), str(r.hi)]
                           for r in (S.x_roots.r1, S.x_roots.r2)]
        body["y_roots"] = [str(r) if not hasattr(r, "lo") else [str(r.lo), str(r.hi)]
                           for r in (S.y_roots.r1, S.y_roots.r2)]
    return body, rep.passed


def cmd_verify(args):
    return _structure_report(_load_structure(args), args)


def cmd_cgms(args):
    S = ot.cgms_family(args.a, args.b, args.c)
    body, ok = _structure_report(S, args)
    A, B = S.quadratics()
    body["params"] = {"a": args.a, "b": args.b, "c": args.c, "d": args.b - args.a - args.c}
    body["coefficient_relations"] = {"a1+b1": A.a1 + B.a1, "a2+b2": A.a2 + B.a2}
    return body, ok


def cmd_legendre(args):
    if len(args.vertices) != 4:
        raise InputError("--vertices needs four integers y1,y2,x1,x2")
    L = ot.LabelledQuadrilateral(*args.vertices)
    if args.theta_free:
        sols = []
        ok = True
        for sol in ot.theta_free_solutions(L):
            body, passed = _structure_report(sol.structure, args)
            enc = sol.enclosure
            body["ratio"] = sol.ratio
            body["ratio_enclosure"] = [enc.lo, enc.hi] if hasattr(enc, "lo") else [enc, enc]
            body["lambda_sq_bracket"] = list(sol.lambda_sq_bracket)
            sols.append(body)
            ok = ok and passed
        return {"quadrilateral": list(L.vertices), "theta_free": sols}, ok
    S = ot.legendre_pair(L, args.t1, args.t2)
    body, ok = _structure_report(S, args)
    checks = ot.boundary_check(S, L.with_scaling(args.t1, args.t2))
    body["labels"] = list(L.with_scaling(args.t1, args.t2).labels)
    body["boundary"] = [{"facet": c.name, "expected": c.expected, "actual": c.actual,
                         "pass": c.passed} for c in checks]
    return body, ok and all(c.passed for c in checks)


def cmd_enumerate(args):
    nx, ny = args.grid
    rows = []
    ok = True
    if args.family == "cgms":
        header = ("a", "b", "c", "lambda_sq", "max_abs_residual", "min_scalar_curvature", "verified")
        triples = ot.enumerate_cgms(args.max_param)
        if args.max_results is not None:
            triples = triples[: args.max_results]
        for a, b, c in triples:
            rep = ot.verify_solution(ot.cgms_family(a, b, c), nx, ny, args.tol)
            rows.append((a, b, c, "0", rep.max_abs_residual, rep.min_scalar_curvature, rep.passed))
            ok = ok and rep.passed
    else:
        header = ("y1", "y2", "x1", "x2", "t1", "t2", "lambda_sq", "max_abs_residual",
                  "min_scalar_curvature", "verified")
        tb = args.t_bound if args.t_bound is not None else args.max_param
        for sol in ot.enumerate_quadrilateral_solutions(args.max_param, tb, args.max_results):
            rep = ot.verify_solution(sol.structure, nx, ny, args.tol)
            q = sol.quadrilateral
            rows.append((str(q.y1), str(q.y2), str(q.x1), str(q.x2), sol.t1, sol.t2,
                         str(sol.lambda_sq), rep.max_abs_residual, rep.min_scalar_curvature,
                         rep.passed))
            ok = ok and rep.passed
    wants_csv = args.format == "csv" or (args.format is None and args.out and args.out.endswith(".csv"))
    if wants_csv:
        return rows_to_csv(header, rows), ok
    return {"family": args.family, "count": len(rows),
            "rows": [dict(zip(header, r)) for r in rows]}, ok


def cmd_calabi_check(args):
    if args.samelson:
        P = calabi.samelson_product(*args.samelson)
    elif args.input:
        try:
            P = calabi.CalabiProfile.from_dict(read_json(args.input))
        except (OSError, json.JSONDecodeError, KeyError, TypeError, ZeroDivisionError) as exc:
            raise InputError(f"cannot read profile: {exc}") from None
    else:
        raise InputError("give --input or --samelson C S")
    n = args.nodes
    z = np.cos((2 * np.arange(n) + 1) * np.pi / (2 * n))
    res = calabi.calabi_residual(P, z)
    i1 = calabi.futaki_integral_1(P, args.quad_order)
    i2 = calabi.futaki_integral_2(P, args.quad_order)
    args_cf = (P.k, P.c, P.v, P.w, P.s_sigma, P.lambda_sq)
    body = {
        "profile": P.to_dict(),
        "max_abs_residual": float(np.max(np.abs(res))),
        "I1": i1, "I1_closed_form": calabi.futaki_1_closed_form(*args_cf),
        "I2": i2, "I2_closed_form": calabi.futaki_2_closed_form(*args_cf),
        "lambda_sq_futaki_1": calabi.lambda_sq_from_futaki_1(*args_cf[:5]),
    }
    body["residual_pass"] = bool(body["max_abs_residual"] <= args.tol)
    return body, body["residual_pass"]


def cmd_futaki(args):
    if args.k == 0:
        if args.s is None:
            raise InputError("k = 0 needs --s")
        r = calabi.futaki_obstruction_k0(args.c, args.v, args.w, args.s)
        return {"k": args.k, "c": args.c, "v": args.v, "w": args.w, **r.to_dict()}, True
    r = calabi.futaki_obstruction_k_nonzero(args.k, args.c, args.v, args.w)
    return {"k": args.k, "c": args.c, "v": args.v, "w": args.w, **r.to_dict()}, True


def cmd_pairings(args):
    S = _load_structure(args)
    pairings = ot.polytope_pairings(S, args.quad_order)
    d = invariants.intersection_from_pairings(pairings)
    gate = invariants.topology_gate(d, 1e-8)
    return {"structure": structure_to_dict(S), "pairings": pairings,
            "intersection": d.to_dict(), "c_alpha_beta": invariants.c_alpha_beta(d),
            "topology": gate.to_dict()}, gate.passed


def cmd_slope(args):
    fields = ("K_rel_sq_A", "B_sq_A", "A_top", "c_ab")
    if args.input:
        try:
            raw = read_json(args.input)
            data = invariants.TestConfigData(int(raw.get("n", 2)), *(float(raw[f]) for f in fields))
        except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise InputError(f"cannot read test configuration: {exc}") from None
    else:
        vals = [getattr(args, f) for f in fields]
        if any(v is None for v in vals):
            raise InputError("give --input or all of --K --B --A --c-ab")
        data = invariants.TestConfigData(args.n, *vals)
    value = invariants.e_na_slope(data)
    return {"test_configuration": data.to_dict(), "e_na_slope": value}, math.isfinite(value)


def cmd_sample(args):
    S = _load_structure(args)
    nx, ny = args.grid
    sample = ot.sample_grid(S, args.field, nx, ny)
    if args.format == "json":
        return {"field": args.field, "nx": nx, "ny": ny,
                "rows": [list(r) for r in sample.rows()]}, True
    return grid_to_csv(sample), True


HANDLERS = {
    "verify": cmd_verify, "cgms": cmd_cgms, "legendre": cmd_legendre,
    "enumerate": cmd_enumerate, "calabi-check": cmd_calabi_check, "futaki": cmd_futaki,
    "pairings": cmd_pairings, "slope": cmd_slope, "sample": cmd_sample,
}


def run(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_merge_config(argv))
        result, ok = HANDLERS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BHEError as exc:
        # parameters parsed fine but do not define a valid structure
        text = dumps_json({"error": type(exc).__name__, "message": str(exc), "pass": False})
        _emit(text, getattr(args, "out", None))
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = result if isinstance(result, str) else dumps_json(result)
    _emit(text, args.out)
    return 0 if ok else 1


def _emit(text: str, out: str | None) -> None:
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


def main() -> None:  # pragma: no cover - console entry point
    sys.exit(run())
