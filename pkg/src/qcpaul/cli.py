"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
from typing import Sequence

import numpy as np

from . import qft
from .circuit import CircuitError, EvalResult, evaluate, max_deviation
from .dsl import ParseError, parse, to_text
from .identities import (DEFAULT_SEED, CatalogError, VerificationReport, list_identities,
                         verify, verify_all)
from .rewrite import RewriteError, get_rule, list_rules, site_at
from .rewrite import apply as apply_rule
from .tensor import DEFAULT_TOL

TOL_ENV = "QCPAUL_TOL"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def fmt_dev(x: float) -> str:
    return f"{x:.2e}"


def report_json(reports: Sequence[VerificationReport], tol: float = DEFAULT_TOL,
                seed: int = DEFAULT_SEED, timing: bool = False) -> str:
    """Stable JSON: tolerance, seed, results, all_pass, in that order."""
    results = [
        {
            "id": r.id,
            "citation": r.citation,
            "points": r.points,
            "max_deviation": fmt_dev(r.max_deviation),
            "pass": r.passed,
            "ms": round(r.elapsed * 1000, 3) if timing else None,
        }
        for r in reports
    ]
    doc = {"tolerance": tol, "seed": seed, "results": results,
           "all_pass": all(r.passed for r in reports)}
    return json.dumps(doc, indent=2, ensure_ascii=False)


def matrix_json(m: np.ndarray) -> list:
    """Complex matrix as nested ``[re, im]`` pairs."""
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def result_json(r: EvalResult) -> dict:
    return {"in_wires": list(r.in_wires), "out_wires": list(r.out_wires),
            "matrix": matrix_json(r.matrix)}


def _fmt_entry(z: complex) -> str:
    re, im = (0.0 if abs(v) < 5e-13 else v for v in (z.real, z.imag))
    return f"{re:+.6f}{im:+.6f}i"


def matrix_text(r: EvalResult) -> str:
    lines = [f"in:  {' '.join(r.in_wires) or '-'}", f"out: {' '.join(r.out_wires) or '-'}"]
    for row in r.matrix:
        lines.append("  ".join(_fmt_entry(z) for z in row))
    return "\n".join(lines)


# argument parsing ----------------------------------------------------------------------

def _tolerance(text: str) -> float:
    try:
        tol = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid tolerance {text!r}") from None
    if not tol >= 0:
        raise argparse.ArgumentTypeError("tolerance must be non-negative")
    return tol


def _seed(text: str) -> int:
    try:
        seed = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return seed


def _assignment(text: str) -> tuple[str, object]:
    name, sep, value = text.partition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    return name, int(value) if value.lstrip("-").isdigit() else value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--tol", type=_tolerance, default=None,
                        help=f"comparison tolerance (default ${TOL_ENV} or {DEFAULT_TOL:g})")
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED,
                        help="seed for randomized parameter draws (default 0xC0FFEE)")

    p = argparse.ArgumentParser(prog="qcpaul", description="Quantum circuit identity toolkit.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", required=True)

    ls = sub.add_parser("list", parents=[common], help="list identities or rewrite rules")
    ls.add_argument("what", choices=("identities", "rules"))

    v = sub.add_parser("verify", parents=[common], help="check catalog identities")
    which = v.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", action="store_true", help="every identity")
    which.add_argument("--id", help="a single identity id")
    v.add_argument("--timing", action="store_true", help="report per-identity milliseconds")
    v.add_argument("--jobs", type=int, default=1, help="worker threads (output order is fixed)")

    e = sub.add_parser("eval", parents=[common], help="evaluate a circuit file")
    e.add_argument("file")

    r = sub.add_parser("rewrite", parents=[common], help="apply a rewrite rule at one site")
    r.add_argument("file")
    r.add_argument("--rule", required=True)
    r.add_argument("--at", type=int, required=True, help="element index of the site")
    r.add_argument("--set", type=_assignment, action="append", default=[], metavar="NAME=VALUE",
                   help="override a site parameter such as an outcome bit or the ancilla")

    q = sub.add_parser("qft", parents=[common], help="emit a quantum Fourier transform circuit")
    q.add_argument("--nb", type=int, required=True)
    q.add_argument("--form", choices=("123", "321"), default="123")
    q.add_argument("--reversal", choices=("minimal", "all-pairs"), default="minimal")
    q.add_argument("--check", action="store_true", help="compare with the DFT matrix")
    return p


def _resolve_tol(arg: float | None) -> float:
    if arg is not None:
        return arg
    env = os.environ.get(TOL_ENV)
    if env is None or env == "":
        return DEFAULT_TOL
    try:
        return _tolerance(env)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"{TOL_ENV}: {exc}") from None


# commands --------------------------------------------------------------------------------

def _cmd_list(args, tol, out) -> int:
    if args.what == "identities":
        items = [{"id": i.id, "citation": i.citation} for i in list_identities()]
        if args.json:
            print(json.dumps(items, indent=2, ensure_ascii=False), file=out)
        else:
            for i in items:
                print(f"{i['id']:28s} {i['citation']}", file=out)
    else:
        items = [{"id": r.id, "arity": r.arity, "summary": r.summary} for r in list_rules()]
        if args.json:
            print(json.dumps(items, indent=2, ensure_ascii=False), file=out)
        else:
            for i in items:
                print(f"{i['id']:28s} {i['arity']}  {i['summary']}", file=out)
    return EXIT_OK


def _cmd_verify(args, tol, out) -> int:
    if args.all:
        reports = verify_all(tol, args.seed, workers=max(1, args.jobs))
    else:
        try:
            reports = [verify(args.id, tol, args.seed)]
        except CatalogError as exc:
            raise UsageError(str(exc)) from None
    if args.json:
        print(report_json(reports, tol, args.seed, args.timing), file=out)
    else:
        for r in reports:
            ms = f"  {r.elapsed * 1000:.1f} ms" if args.timing else ""
            status = "PASS" if r.passed else "FAIL"
            print(f"{status}  {r.id:28s} points={r.points:<4d} max_dev={fmt_dev(r.max_deviation)}{ms}",
                  file=out)
        npass = sum(r.passed for r in reports)
        print(f"{npass}/{len(reports)} identities pass at tolerance {tol:g}", file=out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse(text)
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}") from None
    except CircuitError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _cmd_eval(args, tol, out) -> int:
    r = evaluate(_load(args.file))
    if args.json:
        print(json.dumps(result_json(r), indent=2), file=out)
    else:
        print(matrix_text(r), file=out)
    return EXIT_OK


def _cmd_rewrite(args, tol, out) -> int:
    c = _load(args.file)
    try:
        get_rule(args.rule)
        site = site_at(c, args.rule, args.at, tol)
        if args.set:
            site = site.with_params(**dict(args.set))
        new = apply_rule(c, site, tol)
    except RewriteError as exc:
        raise UsageError(str(exc)) from None
    before, after = evaluate(c), evaluate(new)
    dev = max_deviation(before, after)
    ok = dev <= tol
    if args.json:
        doc = {"rule": args.rule, "at": args.at, "circuit": to_text(new),
               "before": result_json(before), "after": result_json(after),
               "max_deviation": fmt_dev(dev), "pass": ok}
        print(json.dumps(doc, indent=2, ensure_ascii=False), file=out)
    else:
        print(to_text(new), end="", file=out)
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_qft(args, tol, out) -> int:
    try:
        c = qft.build_qft(args.nb, args.form, reversal=args.reversal)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    dev, ok = None, True
    if args.check:
        dev = float(np.max(np.abs(evaluate(c).matrix - qft.dft_matrix(args.nb))))
        ok = dev <= tol
    if args.json:
        doc = {"nb": args.nb, "form": args.form, "circuit": to_text(c),
               "counts": qft.gate_counts(c)}
        if args.check:
            doc["check"] = {"max_deviation": fmt_dev(dev), "pass": ok}
        print(json.dumps(doc, indent=2), file=out)
    else:
        print(to_text(c), end="", file=out)
        if args.check:
            verdict = "equals" if ok else "DIFFERS FROM"
            print(f"# check: circuit {verdict} the DFT matrix, max deviation {fmt_dev(dev)}",
                  file=out)
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {"list": _cmd_list, "verify": _cmd_verify, "eval": _cmd_eval,
            "rewrite": _cmd_rewrite, "qft": _cmd_qft}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        tol = _resolve_tol(args.tol)
        return COMMANDS[args.command](args, tol, out)
    except UsageError as exc:
        print(f"qcpaul: error: {exc}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
