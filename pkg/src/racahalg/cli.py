"""Command-line front end.

    racahalg eval1  --nu a,b,c   --N 3 --n 0   --x 2
    racahalg eval2  --nu a,b,c,d --N 2 --n 0,0 --x 1,2
    racahalg table1 --nu a,b,c   --N 4 [--format csv]
    racahalg verify-qr9 [--nu a,b,c,d] [--N 4] [--format json]

Exit status: 0 success, 1 some relation failed in both forms, 2 usage
error, 3 invalid parameter pack.
"""
import argparse
import csv
import io
import json
import sys

from . import __version__
from .errors import PoleError, ValidityError
from .exactnum import format_rational, parse_rational
from .gridop import degree_set, solve_weight, triangle
from .racah1 import SU11Weights, beta_from_nu, gauge_omega, gauge_sigma, racah1_eval, racah1_table
from .racah2 import params_from_nu, racah2_eval, racah2_table
from .suites import DEFAULT_PACKS, run_suite

EXIT_OK, EXIT_FAILURE, EXIT_USAGE, EXIT_INVALID = 0, 1, 2, 3

COMMANDS = (
    "eval1",
    "eval2",
    "table1",
    "table2",
    "verify-qr3",
    "verify-qr9",
    "verify-casimir",
    "verify-duality",
    "verify-orthogonality",
    "weights",
)

# verify command -> (suites for three weights, suites for four weights)
VERIFY_SUITES = {
    "verify-qr3": (("univariate-eigen", "verify-qr3"), None),
    "verify-qr9": (None, ("verify-qr9",)),
    "verify-casimir": (None, ("verify-casimir",)),
    "verify-duality": (None, ("bivariate-eigen", "commutation", "verify-duality", "my-family")),
    "verify-orthogonality": (("univariate-orthogonality",), ("bivariate-orthogonality",)),
}


class UsageError(Exception):
    pass


def _rational_list(text):
    try:
        return [parse_rational(t.strip()) for t in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _int_list(text):
    try:
        return [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    parser = _Parser(prog="racahalg", description="Exact Racah polynomials and their algebras.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--nu", type=_rational_list, help="comma-separated weights, p/q or integers")
    parser.add_argument("--N", type=int)
    parser.add_argument("--n", type=_int_list, help="degree (n or n1,n2)")
    parser.add_argument("--x", type=_int_list, help="point (x or x1,x2)")
    parser.add_argument("--format", choices=("json", "csv", "text"), default="text")
    parser.add_argument("--out", help="write output here instead of stdout")
    return parser


# --------------------------------------------------------------------------
# commands


def _weights(nu, count):
    if nu is None:
        raise UsageError("--nu is required")
    if len(nu) != count:
        raise UsageError(f"expected {count} weights, got {len(nu)}")
    return SU11Weights.of(nu)


def _require_N(N, minimum=0):
    if N is None:
        raise UsageError("--N is required")
    if N < minimum:
        raise UsageError(f"--N must be at least {minimum}")
    return N


def _single(values, length, flag):
    if values is None or len(values) != length:
        raise UsageError(f"{flag} needs {length} integer(s)")
    return values[0] if length == 1 else tuple(values)


def _eval(args, bivariate):
    w = _weights(args.nu, 4 if bivariate else 3)
    N = _require_N(args.N)
    if bivariate:
        p = params_from_nu(w, N).validate_pack()
        d, g = _single(args.n, 2, "--n"), _single(args.x, 2, "--x")
        if g not in triangle(N) or d not in degree_set(N):
            raise UsageError("need 0 <= x1 <= x2 <= N and n1 + n2 <= N")
        value = racah2_eval(d, g, p)
    else:
        p = beta_from_nu(w, N)
        n, x = _single(args.n, 1, "--n"), _single(args.x, 1, "--x")
        if not (0 <= n <= N and 0 <= x <= N):
            raise UsageError("need 0 <= n, x <= N")
        value = racah1_eval(n, x, p)
    return {"kind": "value", "n": d if bivariate else n, "x": g if bivariate else x, "value": value}


def _table(args, bivariate):
    w = _weights(args.nu, 4 if bivariate else 3)
    N = _require_N(args.N)
    if bivariate:
        p = params_from_nu(w, N).validate_pack()
        rows, cols = list(degree_set(N)), list(triangle(N))
        values = racah2_table(p)
    else:
        p = beta_from_nu(w, N)
        rows = cols = list(range(N + 1))
        values = racah1_table(p)
    return {"kind": "table", "rows": rows, "cols": cols, "values": values}


def _weights_cmd(args):
    if args.nu is None or len(args.nu) not in (3, 4):
        raise UsageError("--nu needs three or four weights")
    w = SU11Weights.of(args.nu)
    N = _require_N(args.N)
    if len(args.nu) == 3:
        beta_from_nu(w, N)
        grid = list(range(N + 1))
        omega = [gauge_omega(x, w, N) for x in grid]
        sigma = [gauge_sigma(n, w, N) for n in grid]
        return {"kind": "weights", "grid": grid, "omega": omega, "degrees": grid, "sigma": sigma}
    p = params_from_nu(w, N).validate_pack()
    G, D = triangle(N), degree_set(N)
    om, sg = solve_weight(racah2_table(p), D, G)
    return {
        "kind": "weights",
        "grid": list(G),
        "omega": om.as_list(),
        "degrees": list(D),
        "sigma": sg.as_list(),
    }


def _verify(args):
    uni, bi = VERIFY_SUITES[args.command]
    if args.N is not None and args.N < 1:
        raise UsageError("--N must be at least 1 for verification")
    Ns = None if args.N is None else (args.N,)
    if args.nu is None:
        names = (uni or ()) + (bi or ())
        packs = DEFAULT_PACKS
    else:
        size = len(args.nu)
        names = {3: uni, 4: bi}.get(size)
        if names is None:
            wanted = " or ".join(str(k) for k, v in ((3, uni), (4, bi)) if v)
            raise UsageError(f"{args.command} takes {wanted} weights, got {size}")
        SU11Weights.of(args.nu)
        # univariate suites read the first three entries of a pack
        packs = (tuple(args.nu),)
    reports = []
    for name in names:
        reports.extend(run_suite(name, packs, Ns))
    return {"kind": "reports", "reports": reports}


def execute(args):
    if args.command in ("eval1", "eval2"):
        return _eval(args, args.command == "eval2")
    if args.command in ("table1", "table2"):
        return _table(args, args.command == "table2")
    if args.command == "weights":
        return _weights_cmd(args)
    return _verify(args)


# --------------------------------------------------------------------------
# rendering


def _label(point):
    if isinstance(point, tuple):
        return "(" + ",".join(str(v) for v in point) + ")"
    return str(point)


def _jsonable(point):
    return list(point) if isinstance(point, tuple) else point


def _results_json(result):
    kind = result["kind"]
    if kind == "value":
        return [{"n": _jsonable(result["n"]), "x": _jsonable(result["x"]), "value": format_rational(result["value"])}]
    if kind == "table":
        return {
            "columns": [_jsonable(g) for g in result["cols"]],
            "rows": [
                {"n": _jsonable(d), "values": [format_rational(v) for v in row]}
                for d, row in zip(result["rows"], result["values"])
            ],
        }
    if kind == "weights":
        return {
            "omega": [{"x": _jsonable(g), "value": format_rational(v)} for g, v in zip(result["grid"], result["omega"])],
            "sigma": [{"n": _jsonable(d), "value": format_rational(v)} for d, v in zip(result["degrees"], result["sigma"])],
        }
    return [r.to_json() for r in result["reports"]]


def _render_csv(result):
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    kind = result["kind"]
    if kind == "value":
        out.writerow(["n", "x", "value"])
        out.writerow([_label(result["n"]), _label(result["x"]), format_rational(result["value"])])
    elif kind == "table":
        out.writerow(["n\\x"] + [_label(g) for g in result["cols"]])
        for d, row in zip(result["rows"], result["values"]):
            out.writerow([_label(d)] + [format_rational(v) for v in row])
    elif kind == "weights":
        out.writerow(["kind", "index", "value"])
        for g, v in zip(result["grid"], result["omega"]):
            out.writerow(["omega", _label(g), format_rational(v)])
        for d, v in zip(result["degrees"], result["sigma"]):
            out.writerow(["sigma", _label(d), format_rational(v)])
    else:
        out.writerow(["relationId", "printedFormHolds", "correctedFormHolds", "verdict"])
        for r in result["reports"]:
            co = "n/a" if r.corrected_holds is None else str(r.corrected_holds).lower()
            out.writerow([r.relation_id, str(r.printed_holds).lower(), co, r.verdict])
    return buf.getvalue()


def _render_text(result):
    kind = result["kind"]
    if kind == "value":
        return format_rational(result["value"]) + "\n"
    if kind == "table":
        header = ["n\\x"] + [_label(g) for g in result["cols"]]
        body = [[_label(d)] + [format_rational(v) for v in row] for d, row in zip(result["rows"], result["values"])]
        widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
        return "".join("  ".join(c.rjust(wd) for c, wd in zip(r, widths)) + "\n" for r in [header] + body)
    if kind == "weights":
        lines = [f"omega{_label(g)} = {format_rational(v)}" for g, v in zip(result["grid"], result["omega"])]
        lines += [f"sigma{_label(d)} = {format_rational(v)}" for d, v in zip(result["degrees"], result["sigma"])]
        return "\n".join(lines) + "\n"
    reports = result["reports"]
    width = max((len(r.relation_id) for r in reports), default=10)
    lines = [f"{'relation'.ljust(width)}  printed  corrected  verdict"]
    for r in reports:
        co = "n/a" if r.corrected_holds is None else str(r.corrected_holds).lower()
        lines.append(f"{r.relation_id.ljust(width)}  {str(r.printed_holds).lower():7}  {co:9}  {r.verdict}")
    counts = {}
    for r in reports:
        counts[r.verdict] = counts.get(r.verdict, 0) + 1
    lines.append(
        f"{len(reports)} relations: "
        + ", ".join(f"{counts.get(v, 0)} {v}" for v in ("printed", "corrected", "FAILED"))
    )
    return "\n".join(lines) + "\n"


def render(args, result):
    if args.format == "json":
        params = {
            "nu": None if args.nu is None else [format_rational(v) for v in args.nu],
            "N": args.N,
        }
        doc = {"version": __version__, "command": args.command, "params": params, "results": _results_json(result)}
        return json.dumps(doc, indent=2) + "\n"
    if args.format == "csv":
        return _render_csv(result)
    return _render_text(result)


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        result = execute(args)
    except UsageError as exc:
        print(f"racahalg: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidityError, PoleError) as exc:
        print(f"racahalg: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    text = render(args, result)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if result["kind"] == "reports" and any(r.failed for r in result["reports"]):
        return EXIT_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
