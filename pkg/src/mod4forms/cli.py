"""Command-line entry point: ``mod4forms qexp ...`` and ``mod4forms check ...``.

Exit status is 0 when every check passes, 1 when any fails, 2 on usage or
parameter errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__, checks, qseries

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

D = checks.DEFAULTS

# subcommand -> [(flag, dest, default)]
CHECK_OPTIONS = {
    "weak-eigenform": [("--bound", "bound", D["hecke_bound"])],
    "f-rule": [("--max-prime", "max_prime", D["max_prime"])],
    "squares": [("--max-n", "max_n", D["max_n"]), ("--max-prime", "max_prime", D["squares_max_prime"])],
    "eta": [("--prec", "prec", D["series_prec"])],
    "torsion": [],
    "frobenius": [("--max-prime", "max_prime", D["max_prime"])],
    "congruence": [("--bound", "bound", D["bound"])],
    "twists": [("--max-prime", "max_prime", D["twist_max_prime"])],
    "weight1": [("--max-prime", "max_prime", D["max_prime"])],
    "fsq-identity": [("--max-ell", "max_ell", D["max_ell"])],
    "hatada": [("--bound", "bound", D["hatada_bound"])],
    "all": [],
}


def parse_modulus(text: str) -> int:
    """Accept '4', '2^2' or '2**2'; return the exponent m of the modulus 2**m."""
    t = text.replace("**", "^").strip()
    if t.startswith("2^"):
        m = int(t[2:])
    else:
        value = int(t)
        if value < 2 or value & (value - 1):
            raise argparse.ArgumentTypeError(f"modulus must be a power of 2, got {text}")
        m = value.bit_length() - 1
    if m < 1:
        raise argparse.ArgumentTypeError(f"modulus must be at least 2, got {text}")
    return m


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mod4forms", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("qexp", help="print q-expansion coefficients")
    q.add_argument("form", choices=sorted(qseries.FORMS))
    q.add_argument("--prec", type=_positive, required=True)
    q.add_argument("--mod", type=parse_modulus, default=None, help="reduce modulo 2^m, e.g. 4 or 2^2")

    c = sub.add_parser("check", help="run verification sweeps")
    csub = c.add_subparsers(dest="check", required=True)
    for name, options in CHECK_OPTIONS.items():
        p = csub.add_parser(name)
        for flag, dest, default in options:
            p.add_argument(flag, dest=dest, type=_positive, default=default)
        if name == "frobenius":
            p.add_argument("--field", choices=["K", "L"], default="K")
        p.add_argument("--report", type=Path, help="write the JSON report here")
        p.add_argument("--figures", type=Path, help="render PNG figures into this directory")
        p.add_argument("--jobs", type=_positive, default=os.cpu_count() or 1)
    return parser


def render_report(results) -> dict:
    return {
        "version": __version__,
        "defaults": {k: v for k, v in sorted(D.items())},
        "results": [r.to_json() for r in results],
    }


def write_report(path: Path, results):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(render_report(results), indent=2) + "\n", encoding="utf-8")


def _print_result(r, out):
    params = " ".join(f"{k}={v}" for k, v in r.parameters.items())
    print(f"{r.verdict.upper():5s} {r.name:34s} {params} ({r.elapsed_millis} ms)", file=out)
    if r.witness:
        print(f"      witness: {json.dumps(r.witness)}", file=out)


def run_check(args, out=None) -> int:
    out = out or sys.stdout
    if args.check == "all":
        results = checks.run_all(jobs=args.jobs)
    else:
        options = {dest: getattr(args, dest) for _, dest, _ in CHECK_OPTIONS[args.check]}
        if args.check == "frobenius":
            options["field"] = args.field
        results = checks.REGISTRY[args.check](jobs=args.jobs, **options)
        if args.check == "torsion":
            from .galois import torsion_matrices

            m_r, m_s = torsion_matrices()
            print(f"M_r = {m_r}", file=out)
            print(f"M_s = {m_s}", file=out)
    for r in results:
        _print_result(r, out)
    if args.report:
        write_report(args.report, results)
        print(f"report written to {args.report}", file=out)
    if args.figures:
        from .plotting import render_figures

        max_prime = getattr(args, "max_prime", D["max_prime"])
        bound = getattr(args, "bound", D["bound"])
        for path in render_figures(args.figures, max_prime, bound):
            print(f"figure written to {path}", file=out)
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed", file=out)
    return EXIT_FAIL if failed else EXIT_OK


def run_qexp(args, out=None) -> int:
    out = out or sys.stdout
    h = qseries.FORMS[args.form](args.prec)
    coeffs = qseries.reduce(h, args.mod).residues if args.mod else h.coeffs
    print(",".join(str(c) for c in coeffs), file=out)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        if args.command == "qexp":
            return run_qexp(args)
        return run_check(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
