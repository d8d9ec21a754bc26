"""
Command Line Interface
Subcommands exposing the polynomial, derivation, grading, polyhedral-divisor
and classification operations.

Exit codes: 0 success or affirmative verdict, 1 negative verdict or failed
validation, 2 usage and parse errors, 3 inconclusive (nilpotency cap exhausted).
Vectors that start with a minus sign are passed as `--m=-2,5`.
"""

import argparse
import json
import logging
import sys

from classify import RootClassifier
from structures.ahmodel import (
    ADDerivationSpec,
    ad_image_of_generator,
    admissible,
    dd_eval,
    from_ad,
    membership,
    translate_spec,
)
from structures.derivation import Automorphism, NotRootReason, derivation_homogeneity, exp, image_homogeneity
from structures.errors import CremonaError, InternalInconsistencyError
from structures.grading import format_vec
from structures.poly import Poly, check_dimension
from utils.config import DEFAULT_BUDGET, DEFAULT_EBOX, DEFAULT_SEED
from utils.parser import parse_derivation, parse_int_vector, parse_poly_list, parse_rational

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

logger = logging.getLogger(__name__)


def print_separator():
    """Print a visual separator line."""
    print("-" * 70)


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _dimension(args):
    return check_dimension(args.n)


def cmd_lnd(args, classifier):
    d = parse_derivation(args.derivation, _dimension(args))
    verdict = classifier.lnd_check(d)
    if verdict.proven:
        orders = ", ".join(f"x{j}: {k}" for j, k in enumerate(verdict.orders, start=1))
        print(f"locally nilpotent (proven); orders {orders}")
        return EXIT_OK
    reached = ", ".join(
        f"x{j}: {'-' if k is None else k}" for j, k in enumerate(verdict.status, start=1)
    )
    print(f"inconclusive: nilpotency cap {verdict.cap} exhausted; orders {reached}")
    return EXIT_INCONCLUSIVE


def cmd_homog(args, classifier):
    d = parse_derivation(args.derivation, _dimension(args))
    if d.is_zero():
        print("zero derivation (homogeneous of every degree)")
        return EXIT_OK
    e = derivation_homogeneity(d)
    if e is not None:
        print(f"homogeneous of degree {format_vec(e)}")
        return EXIT_OK
    print("not homogeneous")
    for j, verdict in enumerate(image_homogeneity(d), start=1):
        print(f"    d(x{j}): {verdict.describe()}")
    return EXIT_NEGATIVE


def cmd_degree(args, classifier):
    d = parse_derivation(args.derivation, _dimension(args))
    e = derivation_homogeneity(d)
    if e is None:
        print("not homogeneous")
        return EXIT_NEGATIVE
    print(format_vec(e))
    return EXIT_OK


def cmd_root_check(args, classifier):
    d = parse_derivation(args.derivation, _dimension(args))
    result = classifier.root_check(d)
    print(result.describe())
    if result.is_root:
        return EXIT_OK
    if result.reason is NotRootReason.NOT_LND_WITHIN_CAP:
        return EXIT_INCONCLUSIVE
    return EXIT_NEGATIVE


def cmd_exp(args, classifier):
    d = parse_derivation(args.derivation, _dimension(args))
    t = parse_rational(args.t)
    verdict = classifier.lnd_check(d)
    if not verdict.proven:
        print(f"inconclusive: nilpotency cap {verdict.cap} exhausted, exp is not defined", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    automorphism = exp(d, t, verdict)
    print(automorphism)
    print(f"jacobian determinant: {automorphism.jacobian_determinant()}")
    return EXIT_OK


def cmd_jac(args, classifier):
    n = _dimension(args)
    automorphism = Automorphism(parse_poly_list(args.images, n, count=n))
    determinant = automorphism.jacobian_determinant()
    print(f"jacobian determinant: {determinant}")
    if determinant == Poly.one(n):
        print("volume-preserving")
        return EXIT_OK
    print("not volume-preserving")
    return EXIT_NEGATIVE


def print_roots(document, entries):
    """
    Print enumerated root vectors in a formatted way.

    Args:
        document (dict): The roots document.
        entries (list): RootVectorEntry values in report order.
    """
    print(f"\nFound {len(entries)} root vector(s) for n={document['n']}, max degree {document['max_deg']}:\n")
    for index, entry in enumerate(entries, 1):
        print(f"[{index}] {entry.derivation().to_terms()}")
        print(f"    alpha: {format_vec(entry.alpha)}")
        print(f"    root: {format_vec(entry.mvec)}  character: {entry.root}")


def cmd_roots(args, classifier):
    n = _dimension(args)
    document = classifier.roots_document(n, args.max_deg)
    if args.json:
        print(json.dumps(document, indent=2))
    else:
        print_roots(document, classifier.roots(n, args.max_deg))
    return EXIT_OK


def cmd_char(args, classifier):
    n = _dimension(args)
    beta = parse_int_vector(args.beta, length=n, name="beta")
    document = classifier.character(beta)
    print(f"character class: {format_vec(document['character'])}")
    if not document["is_root"]:
        print("not a root")
        return EXIT_NEGATIVE
    witness = document["root_vector"]
    print(f"root of {witness['derivation']} (i={witness['i']}, alpha={format_vec(witness['alpha'])})")
    return EXIT_OK


def cmd_ah_eval(args, classifier):
    n = _dimension(args)
    m = parse_int_vector(args.m, length=n - 1, name="m")
    print(dd_eval(m))
    return EXIT_OK


def cmd_ah_member(args, classifier):
    n = _dimension(args)
    m = parse_int_vector(args.m, length=n - 1, name="m")
    if not membership(args.r, m):
        print(f"t^{args.r} * chi^{format_vec(m)} is not in A[D]")
        return EXIT_NEGATIVE
    alpha = from_ad(args.r, m)
    print(f"t^{args.r} * chi^{format_vec(m)} is in A[D]: {Poly.monomial(alpha)}")
    return EXIT_OK


def _spec(args):
    n = _dimension(args)
    e = parse_int_vector(args.e, length=n - 1, name="e")
    lam = parse_rational(args.lam) if args.lam is not None else 1
    return ADDerivationSpec(lam, args.i, e)


def cmd_ah_translate(args, classifier):
    spec = _spec(args)
    d = translate_spec(spec)
    print(f"{spec} -> {d.to_terms()}")
    for j in range(1, spec.n + 1):
        application = ad_image_of_generator(spec, j)
        image = "0" if application.is_zero else str(application.term)
        print(f"    x{j}: {image}")
    return EXIT_OK


def cmd_ah_admissible(args, classifier):
    spec = _spec(args)
    if admissible(spec.i, spec.e):
        print(f"admissible: {spec}")
        return EXIT_OK
    print(f"not admissible: {spec}")
    return EXIT_NEGATIVE


def cmd_verify(args, classifier):
    n = _dimension(args)
    report = classifier.verify(n, args.max_deg, args.ebox, args.budget, args.seed)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        cross = report.cross
        print(f"cross-validation: {cross.entries} entries, {cross.specs} admissible specs, {cross.matched} matched")
        if report.oracle is None:
            print("oracle search: skipped (supported for n <= 3, max degree <= 4)")
        else:
            oracle = report.oracle
            print(
                f"oracle search: {oracle.distinct} distinct candidates of {oracle.draws} drawn"
                f"{' (candidate space exhausted)' if oracle.exhausted else ''}, "
                f"{oracle.skipped_inhomogeneous} not homogeneous, "
                f"{oracle.inconclusive} inconclusive, {oracle.proven_monomial} monomial LNDs, "
                f"{oracle.theorem_checked} listed root vectors checked"
            )
        print_separator()
        for violation in report.violations:
            print(f"violation: {violation}")
        print(f"tested {report.tested}: {'PASS' if report.passed else 'FAIL'}")
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def _add_derivation_command(subparsers, name, handler, help_text, cap=False):
    command = subparsers.add_parser(name, help=help_text)
    command.add_argument("--n", type=int, required=True)
    if cap:
        command.add_argument("--cap", type=_positive_int, default=None, help="nilpotency cap per generator")
    command.add_argument("derivation", help='images "g1, ..., gn" or terms "x2^3 d/dx1 + ..."')
    command.set_defaults(handler=handler)
    return command


def _add_spec_arguments(command):
    command.add_argument("--n", type=int, required=True)
    command.add_argument("--i", type=int, required=True)
    command.add_argument("--e", required=True, help="e1,...,e(n-1)")
    command.add_argument("--lambda", dest="lam", default=None, help="non-zero rational, default 1")


def build_parser():
    """Build the argument parser with every subcommand."""
    parser = argparse.ArgumentParser(
        prog="cremona-roots",
        description="Root vectors of the volume-preserving affine Cremona group for the diagonal torus.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    subparsers = parser.add_subparsers(dest="command", required=True)

    _add_derivation_command(subparsers, "lnd", cmd_lnd, "local nilpotency certificate", cap=True)
    _add_derivation_command(subparsers, "homog", cmd_homog, "M-homogeneity of a derivation")
    _add_derivation_command(subparsers, "degree", cmd_degree, "degree of a homogeneous derivation")
    _add_derivation_command(subparsers, "root-check", cmd_root_check, "decide whether a derivation is a root vector", cap=True)
    exp_command = _add_derivation_command(subparsers, "exp", cmd_exp, "the automorphism exp(t*d)", cap=True)
    exp_command.add_argument("--t", default="1", help="rational time parameter")

    jac = subparsers.add_parser("jac", help="Jacobian determinant of an endomorphism")
    jac.add_argument("--n", type=int, required=True)
    jac.add_argument("images", help='"g1, ..., gn"')
    jac.set_defaults(handler=cmd_jac)

    roots = subparsers.add_parser("roots", help="enumerate root vectors up to a degree")
    roots.add_argument("--n", type=int, required=True)
    roots.add_argument("--max-deg", dest="max_deg", type=int, required=True)
    roots.add_argument("--json", action="store_true")
    roots.add_argument("--jobs", type=_positive_int, default=1)
    roots.set_defaults(handler=cmd_roots)

    char = subparsers.add_parser("char", help="decide whether a character is a root")
    char.add_argument("--n", type=int, required=True)
    char.add_argument("--beta", required=True, help="b1,...,bn")
    char.set_defaults(handler=cmd_char)

    ah = subparsers.add_parser("ah", help="polyhedral divisor model D = Delta * [0]")
    ah_commands = ah.add_subparsers(dest="ah_command", required=True)
    ah_eval = ah_commands.add_parser("eval", help="evaluate D(m)")
    ah_eval.add_argument("--n", type=int, required=True)
    ah_eval.add_argument("--m", required=True, help="m1,...,m(n-1)")
    ah_eval.set_defaults(handler=cmd_ah_eval)
    ah_member = ah_commands.add_parser("member", help="membership of t^r * chi^m in A[D]")
    ah_member.add_argument("--n", type=int, required=True)
    ah_member.add_argument("--r", type=int, required=True)
    ah_member.add_argument("--m", required=True, help="m1,...,m(n-1)")
    ah_member.set_defaults(handler=cmd_ah_member)
    ah_translate = ah_commands.add_parser("translate", help="monomial derivation of an admissible spec")
    _add_spec_arguments(ah_translate)
    ah_translate.set_defaults(handler=cmd_ah_translate)
    ah_admissible = ah_commands.add_parser("admissible", help="admissibility of a spec")
    _add_spec_arguments(ah_admissible)
    ah_admissible.set_defaults(handler=cmd_ah_admissible)

    verify = subparsers.add_parser("verify", help="cross-validate the classification and run the oracle")
    verify.add_argument("--n", type=int, required=True)
    verify.add_argument("--max-deg", dest="max_deg", type=int, required=True)
    verify.add_argument("--ebox", type=int, default=DEFAULT_EBOX)
    verify.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    verify.add_argument("--json", action="store_true")
    verify.add_argument("--jobs", type=_positive_int, default=1)
    verify.set_defaults(handler=cmd_verify)
    return parser


def run(argv=None):
    """
    Parse the command line and dispatch.

    Args:
        argv (list): Arguments without the program name; sys.argv[1:] when None.

    Returns:
        int: Exit code 0, 1, 2 or 3.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    classifier = RootClassifier(cap=getattr(args, "cap", None), jobs=getattr(args, "jobs", 1))
    try:
        return args.handler(args, classifier)
    except InternalInconsistencyError as exc:
        logger.error("internal inconsistency: %s", exc)
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except CremonaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
