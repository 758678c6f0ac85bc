"""Command-line front end.  Every command prints one JSON document to standard output."""

from __future__ import annotations

import argparse
import cmath
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

from . import majorant, pipeline
from .errors import CertificateError, GPSError, OutsideSector, ProblemFormatError
from .problem import FORMAT, load_problem

EXIT_OK = 0
EXIT_FAIL = 2
EXIT_UNDECIDABLE = 3
EXIT_USAGE = 64

EXIT_CODES = {"fail": EXIT_FAIL, "undecidable": EXIT_UNDECIDABLE, "usage": EXIT_USAGE}

EPILOG = """exit codes:
  0   success
  2   a hypothesis or consistency check failed (structured JSON error on stdout)
  3   undecidable from the supplied prefix (more terms are needed)
  64  usage error: bad arguments, unreadable or malformed input

environment:
  GPS_CERTIFY_THREADS  maximum worker threads for batch evaluation
"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _emit(data, output: Optional[str] = None):
    text = dumps(data)
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path):
    try:
        return load_problem(path)
    except OSError as exc:
        raise ProblemFormatError(f"cannot read {path}: {exc.strerror}") from exc


def max_threads() -> Optional[int]:
    raw = os.environ.get("GPS_CERTIFY_THREADS")
    if not raw:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"GPS_CERTIFY_THREADS must be an integer, got {raw!r}")
    if value < 1:
        raise UsageError("GPS_CERTIFY_THREADS must be at least 1")
    return value


# -- commands -----------------------------------------------------------------

def cmd_check(args) -> int:
    problem = _load(args.problem)
    report = pipeline.run_check(problem)
    _emit({"format": FORMAT, "report": report.to_json()}, args.output)
    if report.satisfied:
        return EXIT_OK
    return EXIT_UNDECIDABLE if report.indeterminate else EXIT_FAIL


def cmd_reduce(args) -> int:
    problem = _load(args.problem)
    report = pipeline.run_check(problem)
    if not report.satisfied:
        raise pipeline.HypothesisFailed(report)
    red, basis, absorbed = pipeline.build_reduction(problem)
    _emit({"format": FORMAT, "reduced": red.to_json(), "basis": basis.to_json(),
           "absorbed_terms": absorbed}, args.output)
    return EXIT_OK


def cmd_expand(args) -> int:
    problem = _load(args.problem)
    if args.order < 0:
        raise UsageError("--order must be nonnegative")
    ex = pipeline.expand_problem(problem, args.order)
    series = problem.prefix if args.order == 0 else ex.solution
    _emit({"format": FORMAT, "order": args.order, "mu": ex.reduced.mu,
           "s_mu": ex.reduced.s_mu.to_json(), "basis": ex.basis.to_json(),
           "series": series.to_json()}, args.output)
    return EXIT_OK


def _run(args):
    problem = _load(args.problem)
    result = pipeline.run(problem, max_degree=args.max_degree, grid_cap=args.grid_cap,
                          opening=args.sector_opening)
    return problem, result


def cmd_certify(args) -> int:
    _, result = _run(args)
    _emit(pipeline.certificate(result), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        with open(args.certificate) as fh:
            cert = json.load(fh)
    except OSError as exc:
        raise ProblemFormatError(f"cannot read {args.certificate}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(
            f"{args.certificate}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(cert, dict):
        raise CertificateError("certificate must be a JSON object")
    problem = _load(args.problem)
    if args.max_degree is not None and cert.get("max_degree") != args.max_degree:
        raise CertificateError(f"degree mismatch: certificate has max_degree "
                               f"{cert.get('max_degree')!r}, expected {args.max_degree}")
    failures = pipeline.verify_certificate(cert, problem)
    _emit({"format": FORMAT, "ok": not failures, "failures": failures}, args.output)
    return EXIT_OK if not failures else EXIT_FAIL


def _parse_point(text) -> complex:
    if isinstance(text, (list, tuple)) and len(text) == 2:
        return complex(float(text[0]), float(text[1]))
    if isinstance(text, (int, float)):
        return complex(float(text), 0.0)
    parts = str(text).split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) != 2:
        raise ValueError(f"expected re,im, got {text!r}")
    return complex(float(parts[0]), float(parts[1]))


def _read_samples(path) -> List[complex]:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    try:
        stripped = text.lstrip()
        if stripped.startswith("[") or stripped.startswith("{"):
            data = json.loads(text)
            if isinstance(data, dict):
                data = data.get("points", [])
            return [_parse_point(p) for p in data]
        return [_parse_point(line) for line in text.splitlines() if line.strip()]
    except (ValueError, TypeError) as exc:
        raise UsageError(f"{path}: bad sample point: {exc}")


def cmd_eval(args) -> int:
    points: List[complex] = []
    try:
        if args.x is not None:
            points.append(_parse_point(args.x))
    except ValueError as exc:
        raise UsageError(f"--x: {exc}")
    if args.samples:
        points.extend(_read_samples(args.samples))
    if not points:
        raise UsageError("eval needs --x or --samples")
    threads = max_threads()
    _, result = _run(args)
    series = result.solution()
    half = result.opening / 2
    for x in points:
        if x == 0 or abs(cmath.phase(x)) > half or not abs(x) < result.x_radius:
            raise OutsideSector(f"x = {x} lies outside the sector |arg x| <= {half!r}, "
                                f"0 < |x| < {result.x_radius!r}")

    def value(x):
        return majorant.evaluate_series(series, x, result.opening)

    with ThreadPoolExecutor(max_workers=threads) as pool:
        values = list(pool.map(value, points))
    out = [{"x": [pipeline._float(x.real), pipeline._float(x.imag)],
            "y": [pipeline._float(v.real), pipeline._float(v.imag)]}
           for x, v in zip(points, values)]
    _emit({"format": FORMAT, "truncation_degree": result.series.max_degree,
           "x_radius": pipeline._float(result.x_radius), "values": out}, args.output)
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gpsconv", description=(
        "Convergence certificates for generalized power-series solutions of algebraic "
        "ODEs written with delta = x d/dx."),
        epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text, epilog=EPILOG,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.set_defaults(func=func)
        p.add_argument("--output", "-o", help="write JSON here instead of standard output")
        return p

    def pipeline_flags(p):
        p.add_argument("--max-degree", type=int, help="lattice total degree of the expansion")
        p.add_argument("--grid-cap", type=int, help="largest dyadic exponent tried for (t, W)")
        p.add_argument("--sector-opening", type=float, help="sector opening angle in radians")

    p = add("check", cmd_check, "check the order inequalities on the prefix")
    p.add_argument("problem")
    p = add("reduce", cmd_reduce, "print the reduced equation L(delta) u = N")
    p.add_argument("problem")
    p = add("expand", cmd_expand, "print prefix plus tail up to a lattice degree")
    p.add_argument("problem")
    p.add_argument("--order", type=int, default=6, help="lattice total degree (default 6)")
    p = add("certify", cmd_certify, "run the full pipeline and print a certificate")
    p.add_argument("problem")
    pipeline_flags(p)
    p = add("verify", cmd_verify, "re-check a certificate against its problem")
    p.add_argument("certificate")
    p.add_argument("problem")
    p.add_argument("--max-degree", type=int, help="expected max_degree of the certificate")
    p = add("eval", cmd_eval, "evaluate the truncated series inside the certified sector")
    p.add_argument("problem")
    p.add_argument("--x", help="evaluation point as re,im")
    p.add_argument("--samples", help="file of points: JSON list of [re, im] or re,im lines")
    pipeline_flags(p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gpsconv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GPSError as exc:
        sys.stdout.write(dumps({"format": FORMAT, **exc.to_json()}))
        return EXIT_CODES.get(exc.kind, EXIT_FAIL)


if __name__ == "__main__":
    sys.exit(main())
