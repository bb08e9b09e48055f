"""Command-line front end.

Exit codes: 0 proved/valid, 1 invalid certificate or table mismatch,
2 incumbent only, 3 infeasible k, 64 usage error, 65 unreadable input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from importlib import resources

from .compute import METHODS, compute_wdim
from .constructions import construct_diagonal, construct_xt, construct_xt_prime, construct_yn
from .errors import (
    BudgetExceeded,
    GraphError,
    Infeasible,
    KExceedsKappa,
    KTooSmallForReduction,
    OutOfRange,
    ParseError,
    WdimError,
)
from .graph import make_hamming, make_hypercube, read_edge_list
from .ilp.formulations import BUILDERS
from .ilp.lpformat import export_lp, parse_lp
from .ilp.solver import solve
from .resolving import VertexSet, kappa_bruteforce, kappa_hamming_formula, verify

EXIT_OK, EXIT_INVALID, EXIT_INCUMBENT, EXIT_INFEASIBLE, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3, 64, 65
FORMS = {"fs": "fs", "fs-": "fs_minus", "fs_minus": "fs_minus", "fgh": "fgh"}
KAPPA_CROSSCHECK_LIMIT = 400


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


# parsing helpers ---------------------------------------------------------------
def parse_graph_spec(text):
    """hamming:n1,...,nr | hypercube:r | file:PATH"""
    kind, _, arg = text.partition(":")
    if not arg:
        raise UsageError(f"graph spec {text!r} must look like hamming:5,5, hypercube:4 or file:PATH")
    if kind == "file":
        try:
            return read_edge_list(arg)
        except OSError as exc:
            raise InputError(f"cannot read {arg}: {exc}") from None
        except (ParseError, GraphError) as exc:
            raise InputError(str(exc)) from None
    try:
        nums = [int(x) for x in arg.split(",")]
    except ValueError:
        raise UsageError(f"bad numbers in graph spec {text!r}") from None
    if kind == "hamming":
        return make_hamming(nums)
    if kind == "hypercube":
        if len(nums) != 1:
            raise UsageError("hypercube takes one dimension, e.g. hypercube:4")
        return make_hypercube(nums[0])
    raise UsageError(f"unknown graph kind {kind!r}")


def parse_range(text):
    """'5..10', '5-10' or '7' as an inclusive list."""
    m = re.fullmatch(r"\s*(\d+)\s*(?:(?:\.\.|-)\s*(\d+))?\s*", text)
    if not m:
        raise UsageError(f"bad range {text!r}; use A..B or a single integer")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if hi < lo:
        raise UsageError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def read_set_file(path, g):
    """Coordinates as JSON ([[i, j], ...] or a certificate with "set") or one 'i j' / 'i,j' per line."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    stripped = text.strip()
    items = []
    if stripped.startswith("[") or stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: bad JSON: {exc}") from None
        if isinstance(data, dict):
            data = data.get("set", data.get("witness"))
        if not isinstance(data, list):
            raise InputError(f"{path}: expected a list of coordinates")
        for entry in data:
            items.append(tuple(entry) if isinstance(entry, list) else entry)
    else:
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                nums = tuple(int(x) for x in re.split(r"[,\s]+", line.strip("()")) if x)
            except ValueError:
                raise InputError(f"{path}: line {lineno}: expected integers, got {line!r}") from None
            items.append(nums[0] if len(nums) == 1 else nums)
    try:
        return VertexSet.of(g, items)
    except (GraphError, OutOfRange, ValueError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _budget(args):
    if args.budget is not None:
        return args.budget
    env = os.environ.get("WDIMK_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"WDIMK_BUDGET must be an integer, got {env!r}") from None
    return None


def _emit(obj):
    print(json.dumps(obj))


def _csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    sys.stdout.write(buf.getvalue())


# commands ----------------------------------------------------------------------
def cmd_kappa(args):
    g = parse_graph_spec(args.graph)
    out = {"graph": g.spec()}
    if g.is_hamming and len(g.dims) >= 2:
        value = kappa_hamming_formula(sorted(g.dims, reverse=True))
        out.update(kappa=value, method="formula")
        if g.vertex_count < KAPPA_CROSSCHECK_LIMIT:
            brute = kappa_bruteforce(g)
            out["crosscheck"] = brute
            if brute != value:
                raise AssertionError(f"kappa formula {value} disagrees with brute force {brute}")
    else:
        out.update(kappa=kappa_bruteforce(g), method="brute")
    if args.format == "csv":
        _csv([["kappa", "method"], [out["kappa"], out["method"]]])
    else:
        _emit(out)
    return EXIT_OK


def cmd_compute(args):
    g = parse_graph_spec(args.graph)
    try:
        res = compute_wdim(g, args.k, method=args.method, budget=_budget(args), verbose=args.verbose)
    except (KExceedsKappa, Infeasible) as exc:
        _emit({"graph": g.spec(), "k": args.k, "infeasible": True, "reason": str(exc)})
        return EXIT_INFEASIBLE
    if args.verbose:
        print(json.dumps({"event": "metadata", "elapsed_ms": res.info.get("elapsed_ms")}), file=sys.stderr)
    if args.format == "csv":
        _csv([["k", "value", "method", "proved"], [res.k, res.value, res.method, str(res.proved).lower()]])
    else:
        _emit(res.to_json(graph=g))
    return EXIT_OK if res.proved else EXIT_INCUMBENT


def cmd_verify(args):
    g = parse_graph_spec(args.graph)
    s = read_set_file(args.set_file, g)
    cert = verify(g, s, args.k)
    if args.format == "csv":
        _csv([["k", "size", "min_value", "valid"], [cert.k, len(s), cert.min_value, str(cert.valid).lower()]])
    else:
        _emit(cert.to_json())
    return EXIT_OK if cert.valid else EXIT_INVALID


def cmd_construct(args):
    fam, n = args.family, args.n
    if fam == "diagonal":
        s = construct_diagonal(n, _need(args.i, "--i"))
        k = None
    elif fam == "xt":
        t = _need(args.t, "--t")
        s, k = construct_xt(n, t), 2 * n - 2 * t
    elif fam == "xtprime":
        t = _need(args.t, "--t")
        s, k = construct_xt_prime(n, t), 2 * n - 2 * t - 1
    else:
        s, k = construct_yn(n), 2
    g = s.graph
    # a single diagonal has no guaranteed k; its certificate is informational
    cert = verify(g, s, k if k is not None else 1)
    out = {"family": fam, "n": n, "k": k, "size": len(s), "set": s.labels(), "certificate": cert.to_json()}
    if args.format == "csv":
        _csv([["i", "j"]] + [list(c) for c in s.coords()])
    else:
        _emit(out)
    return EXIT_OK if cert.valid or k is None else EXIT_INVALID


def _need(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required for this family")
    return value


def cmd_export(args):
    g = parse_graph_spec(args.graph)
    form = FORMS[args.form]
    try:
        model = BUILDERS[form](g, args.k)
    except KTooSmallForReduction as exc:
        raise UsageError(str(exc)) from None
    except KExceedsKappa as exc:
        _emit({"graph": g.spec(), "k": args.k, "infeasible": True, "reason": str(exc)})
        return EXIT_INFEASIBLE
    try:
        export_lp(model, args.output)
    except OSError as exc:
        raise InputError(f"cannot write {args.output}: {exc}") from None
    _emit({"path": args.output, **model.summary()})
    return EXIT_OK


def cmd_parse(args):
    try:
        model = parse_lp(args.path)
    except OSError as exc:
        raise InputError(f"cannot read {args.path}: {exc}") from None
    except ParseError as exc:
        raise InputError(f"{args.path}: {exc}") from None
    _emit(model.summary())
    return EXIT_OK


def cmd_solve(args):
    try:
        model = parse_lp(args.path)
    except OSError as exc:
        raise InputError(f"cannot read {args.path}: {exc}") from None
    except ParseError as exc:
        raise InputError(f"{args.path}: {exc}") from None
    try:
        res = solve(model, budget=_budget(args), verbose=args.verbose, method=args.method)
    except Infeasible as exc:
        _emit({"infeasible": True, "reason": str(exc)})
        return EXIT_INFEASIBLE
    _emit(res.to_json())
    return EXIT_OK if res.proved_optimal else EXIT_INCUMBENT


def load_expected(path, n):
    """Expected-value CSV: header 'k,m1,m2,...', then one row per k; '#' lines are comments."""
    if path == "shipped":
        try:
            text = resources.files("wdimk").joinpath("data", f"ref_n{n}.csv").read_text()
        except FileNotFoundError:
            raise UsageError(f"no shipped reference values for n={n}") from None
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc}") from None
    rows = [r for r in csv.reader(line for line in text.splitlines() if line and not line.startswith("#"))]
    try:
        ms = [int(x) for x in rows[0][1:]]
        return {(int(r[0]), m): int(v) for r in rows[1:] for m, v in zip(ms, r[1:]) if v.strip()}
    except (ValueError, IndexError):
        raise InputError(f"{path}: malformed expected-value table") from None


def run_table(n, ms, ks, method="ilp:fgh", expected=None, budget=None, verbose=False):
    """Fill a table of wdim_k(K_n x K_m); returns the report dict."""
    cells = []
    mismatches = []
    for k in ks:
        for m in ms:
            g = make_hamming([n, m])
            cell = {"k": k, "m": m}
            if method == "formula" and m != n:
                cell.update(value=None, method="formula", status="skipped")
            else:
                try:
                    res = compute_wdim(g, k, method=method, budget=budget, verbose=verbose)
                    cell.update(value=res.value, method=res.method, status="proved" if res.proved else "incumbent")
                except (KExceedsKappa, Infeasible, OutOfRange) as exc:
                    cell.update(value=None, method=method, status="skipped", reason=str(exc))
                except BudgetExceeded as exc:
                    cell.update(value=None, method=method, status="incumbent", reason=str(exc))
            if expected is not None and cell["status"] == "proved" and (k, m) in expected:
                cell["expected"] = expected[(k, m)]
                if expected[(k, m)] != cell["value"]:
                    mismatches.append({"k": k, "m": m, "value": cell["value"], "expected": expected[(k, m)]})
            cells.append(cell)
    return {"n": n, "m_range": [ms[0], ms[-1]], "k_range": [ks[0], ks[-1]], "cells": cells, "mismatches": mismatches}


def _cell_text(cell):
    if cell["value"] is None:
        return ""
    return f"{cell['value']}*" if cell["status"] == "incumbent" else str(cell["value"])


def cmd_table(args):
    ms, ks = parse_range(args.m), parse_range(args.k)
    expected = load_expected(args.expected, args.n) if args.expected else None
    report = run_table(args.n, ms, ks, args.method, expected, _budget(args), args.verbose)
    if args.format == "csv":
        by = {(c["k"], c["m"]): c for c in report["cells"]}
        _csv([["k"] + ms] + [[k] + [_cell_text(by[(k, m)]) for m in ms] for k in ks])
    else:
        _emit(report)
    for mm in report["mismatches"]:
        print(f"mismatch: k={mm['k']} m={mm['m']} computed {mm['value']} expected {mm['expected']}", file=sys.stderr)
    if report["mismatches"]:
        return EXIT_INVALID
    if any(c["status"] == "incumbent" for c in report["cells"]):
        return EXIT_INCUMBENT
    return EXIT_OK


def run_conjecture(n, ms, ks, budget=None, verbose=False):
    rows = []
    for m in ms:
        if m < n + 1:
            raise UsageError(f"the conjectured formula needs m >= n+1, got m={m}")
        for k in ks:
            if not 2 <= k <= 2 * n:
                raise UsageError(f"k must lie in [2, {2 * n}], got {k}")
            half = -(-k // 2)
            formula = m * half if k % 2 == 0 else m * half - 1
            res = compute_wdim(make_hamming([n, m]), k, method="ilp:fgh", budget=budget, verbose=verbose)
            rows.append({
                "n": n, "m": m, "k": k, "ilp": res.value, "formula": formula,
                "in_claimed_domain": k >= 3 or m >= 2 * n,
                "agree": res.value == formula, "proved": res.proved,
            })
    deviations = [{"m": r["m"], "k": r["k"], "ilp": r["ilp"], "formula": r["formula"]} for r in rows if not r["agree"]]
    return {"n": n, "rows": rows, "agreements": sum(r["agree"] for r in rows), "deviations": deviations,
            "conjectural": True}


def cmd_conjecture(args):
    report = run_conjecture(args.n, parse_range(args.m), parse_range(args.k), _budget(args), args.verbose)
    if args.format == "csv":
        keys = ["n", "m", "k", "ilp", "formula", "in_claimed_domain", "agree"]
        _csv([keys] + [[str(r[c]).lower() if isinstance(r[c], bool) else r[c] for c in keys] for r in report["rows"]])
    else:
        _emit(report)
    return EXIT_OK


# wiring ------------------------------------------------------------------------
def build_parser():
    def flags(parser, suppress):
        # global flags are accepted before or after the command name
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        parser.add_argument("--format", choices=["json", "csv"], default=d("json"))
        parser.add_argument("--budget", type=int, default=d(None), help="node budget (overrides WDIMK_BUDGET)")
        parser.add_argument("--verbose", action="store_true", default=d(False),
                            help="solver telemetry as JSON lines on stderr")
        return parser

    common = flags(argparse.ArgumentParser(add_help=False), True)
    p = flags(_Parser(prog="wdimk", description="Weak k-resolving sets and wdim_k of graphs."), False)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("kappa", parents=[common], help="largest feasible k")
    s.add_argument("graph")
    s.set_defaults(func=cmd_kappa)

    s = sub.add_parser("compute", parents=[common], help="wdim_k of a graph")
    s.add_argument("graph")
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--method", choices=METHODS, default="auto")
    s.set_defaults(func=cmd_compute)

    s = sub.add_parser("verify", parents=[common], help="certificate for a vertex set")
    s.add_argument("graph")
    s.add_argument("set_file")
    s.add_argument("-k", type=int, required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("construct", parents=[common], help="explicit sets on K_n x K_n")
    s.add_argument("family", choices=["diagonal", "xt", "xtprime", "yn"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--t", type=int)
    s.add_argument("--i", type=int)
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("export", parents=[common], help="write an integer program in LP format")
    s.add_argument("graph")
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--form", choices=sorted(FORMS), default="fgh")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_export)

    s = sub.add_parser("parse", parents=[common], help="read an LP file and summarize it")
    s.add_argument("path")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("solve", parents=[common], help="solve an LP file with the built-in solver")
    s.add_argument("path")
    s.add_argument("--method", choices=["auto", "bnb"], default="auto")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("table", parents=[common], help="fill a table of wdim_k(K_n x K_m)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", required=True, help="range A..B")
    s.add_argument("--k", required=True, help="range A..B")
    s.add_argument("--method", choices=METHODS, default="ilp:fgh")
    s.add_argument("--expected", help="CSV of expected values, or 'shipped' for the bundled reference")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("conjecture", parents=[common], help="compare optima with the conjectured formula")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", required=True)
    s.add_argument("--k", required=True)
    s.set_defaults(func=cmd_conjecture)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"wdimk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"wdimk: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OutOfRange, GraphError, KTooSmallForReduction) as exc:
        print(f"wdimk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"wdimk: {exc}", file=sys.stderr)
        return EXIT_INCUMBENT
    except WdimError as exc:
        print(f"wdimk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
