"""Command-line entry point.

Exit codes:
  0  success
  1  parse or I/O error
  2  no certificate: Polya search exhausted, or pi negative at a sample (certify)
  3  verification or property-suite failure
  4  tuple is not commuting (or not Hermitian)
  5  expression not evaluable on the spectrum
"""

import argparse
import re
import sys
from fractions import Fraction

from . import jsonio
from .calculus import gamma
from .cases import random_diagonals
from .expr import DomainViolation, parse_sexpr
from .matrix import (
    CommutingTuple,
    DiagonalizationError,
    NonCommutingError,
    NotHermitianError,
    joint_spectrum,
    make_commuting_tuple,
    matrix_to_json,
)
from .poly import PolyParseError, parse_poly
from .polya import (
    NegativeValueError,
    PolyaSearchExhausted,
    RationalPositivityInput,
    certificate_from_json,
    certificate_to_json,
    certify,
    input_var_names,
    verify_certificate,
)
from .props import SUITES, run_all
from .rng import Lcg64

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_EXHAUSTED = 2
EXIT_FAILED = 3
EXIT_NONCOMMUTING = 4
EXIT_DOMAIN = 5


class InputError(Exception):
    pass


def _read_text(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _emit(text, out):
    if out:
        try:
            jsonio.write_atomic(out, text + "\n")
        except OSError as exc:
            raise InputError(f"cannot write {out}: {exc}") from exc
    else:
        sys.stdout.write(text + "\n")


def _infer_n(text):
    indices = [int(m) for m in re.findall(r"\bt(\d+)\b", text)]
    return max(indices, default=1)


def _read_pi(path, n=None):
    text = _read_text(path).strip()
    n = n or _infer_n(text)
    try:
        return parse_poly(text, input_var_names(n)), n
    except PolyParseError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _read_tuple(path):
    try:
        data = jsonio.read_json(path)
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read tuple {path}: {exc}") from exc
    try:
        return CommutingTuple.from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed tuple file {path}: {exc}") from exc


def cmd_certify(args):
    pi, n = _read_pi(args.pi_file, args.n)
    try:
        inp = RationalPositivityInput(pi, n, args.k, args.l)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    try:
        cert = certify(inp, Fraction(args.epsilon), args.m_max, args.samples, args.seed)
    except (PolyaSearchExhausted, NegativeValueError) as exc:
        print(f"certify: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    _emit(jsonio.dumps(certificate_to_json(cert)), args.out)
    print(f"certify: M={cert.M}, {len(cert.sigma)} coefficients", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args):
    try:
        data = jsonio.read_json(args.cert_file)
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read certificate {args.cert_file}: {exc}") from exc
    pi, _ = _read_pi(args.pi_file, int(data.get("n", 0)) or None)
    try:
        cert = certificate_from_json(data)
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"malformed certificate: {exc}") from exc
    report = verify_certificate(cert, pi)
    print(report)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_spectrum(args):
    t = _read_tuple(args.tuple_file)
    spec = joint_spectrum(t, args.clustering_tol)
    _emit(jsonio.dumps(spec.to_json()), args.out)
    return EXIT_OK


def cmd_calc(args):
    t = _read_tuple(args.tuple_file)
    try:
        f = parse_sexpr(args.expr)
    except ValueError as exc:
        raise InputError(f"bad expression: {exc}") from exc
    result = gamma(t, f)
    _emit(jsonio.dumps(matrix_to_json(result)), args.out)
    return EXIT_OK


def cmd_props(args):
    results = run_all(args.seed, args.cases, args.suite or None)
    payload = {"seed": args.seed, "cases": args.cases, "suites": [r.to_json() for r in results]}
    _emit(jsonio.dumps(payload), args.out)
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAILED


def cmd_gen(args):
    rng = Lcg64(args.seed)
    diags = random_diagonals(rng, args.dim, args.n, distinct=args.distinct)
    t = make_commuting_tuple(rng.next_u64(), diags)
    _emit(jsonio.dumps(t.to_json()), args.out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="sucalc", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="produce a Polya positivity certificate")
    p.add_argument("pi_file")
    p.add_argument("--epsilon", default="1")
    p.add_argument("--m-max", type=int, default=50)
    p.add_argument("--n", type=int, default=None, help="number of t variables (inferred)")
    p.add_argument("--k", type=int, default=None, help="degree bound in s")
    p.add_argument("--l", type=int, default=None, help="total degree bound in t")
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="check a certificate against a polynomial")
    p.add_argument("cert_file")
    p.add_argument("pi_file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", help="joint spectrum of a commuting tuple")
    p.add_argument("tuple_file")
    p.add_argument("--clustering-tol", type=float, default=1e-7)
    p.add_argument("--out")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("calc", help="apply a function expression to a tuple")
    p.add_argument("tuple_file")
    p.add_argument("expr", help="S-expression, e.g. '(sqrt (pr 1))'")
    p.add_argument("--out")
    p.set_defaults(func=cmd_calc)

    p = sub.add_parser("props", help="run the seeded property suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=20)
    p.add_argument("--suite", action="append", choices=sorted(SUITES))
    p.add_argument("--out")
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("gen", help="emit a seeded random commuting tuple")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--distinct", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NonCommutingError, NotHermitianError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCOMMUTING
    except DomainViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except DiagonalizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
