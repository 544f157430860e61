"""Command-line front end: ``logtan <subcommand> [options]``.

Every subcommand prints one JSON envelope

    {schemaVersion, command, config, report, pass}

on stdout (or to ``--output``); logs go to stderr. Exit codes: 0 when every
requested check passes, 1 when a check fails, 2 on usage errors, 3 when an
instance is out of reach (scale, degree cap, or genericity budget).
"""

import argparse
import logging
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any

from src.checks import ErrorKind
from src.config import Settings, get_settings
from src.determinants.build import Flavor
from src.determinants.semigeneric import minors_ideal_check, semigeneric_section
from src.determinants.suite import det_suite
from src.errors import (
    DegreeBoundExceeded,
    GenericityError,
    HypothesisError,
    LogtanError,
    ScaleError,
)
from src.geometry.cohomology import cohom_t, euler_s_report
from src.geometry.cover import cover_solutions
from src.groebner.hilbert import hilbert_function, hilbert_function_dense
from src.groebner.ideal import Ideal
from src.groebner.resolution import resolve
from src.kernel.fields import FieldSpec
from src.kernel.parser import parse_polynomial, parse_polynomials
from src.quiver.scan import quiver_report
from src.report import SCHEMA_VERSION, ReportModel, dumps
from src.selftest import run_selftest
from src.stability.jacobian import jacobian_data
from src.stability.ladder import cross_field_stability, stability_check

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_UNREACHABLE = 3

# Handler result: (report payload, pass flag, most severe error kind)
Outcome = tuple[dict[str, Any], bool, ErrorKind | None]


def _field(args: argparse.Namespace, settings: Settings) -> FieldSpec:
    if args.rationals:
        return FieldSpec.rationals()
    return FieldSpec.prime_field(settings.prime if args.prime is None else args.prime)


def _read_polynomial(args: argparse.Namespace) -> str:
    if args.input is not None:
        return Path(args.input).read_text(encoding="utf-8").strip()
    if args.poly is None:
        raise HypothesisError("one of --poly or --input is required")
    return args.poly


def _with_pass(report: ReportModel, passed: bool) -> Outcome:
    return report.to_dict(), passed, None


def cmd_stability(args: argparse.Namespace, field: FieldSpec) -> Outcome:
    """Stability ladder of a hypersurface (or its cross-field comparison)."""
    text = _read_polynomial(args)
    if args.cross_field:
        report = cross_field_stability(text, args.vars)
        return _with_pass(report, report.agree)
    h = jacobian_data(parse_polynomial(text, args.vars, field))
    result = stability_check(h, use_corollary_b=not args.tjurina_only)
    return _with_pass(result, True)


def cmd_hilbert(args: argparse.Namespace, field: FieldSpec) -> Outcome:
    """Hilbert function of R/I, cross-checked by dense linear algebra."""
    ideal = Ideal(parse_polynomials(args.poly, args.vars, field), args.vars, field)
    hf = hilbert_function(ideal, args.max_degree)
    dense = hilbert_function_dense(ideal, args.max_degree)
    payload = hf.to_dict()
    payload["denseAgrees"] = hf.dims() == dense
    return payload, hf.dims() == dense, None


def cmd_resolution(args: argparse.Namespace, field: FieldSpec) -> Outcome:
    """Minimal graded free resolution of R/I."""
    gens = parse_polynomials(args.poly, args.vars, field)
    res = resolve(gens, max_steps=args.max_steps, seed=args.seed)
    payload = res.model_dump(mode="json", by_alias=True, exclude={"maps"})
    return payload, res.complete or args.max_steps is not None, None


def cmd_det_suite(args: argparse.Namespace, field: FieldSpec) -> Outcome:
    """Every check for the size-n generic or symmetric determinant."""
    report = det_suite(args.n, Flavor(args.flavor), args.seed, field, args.fiber_trials)
    return report.to_dict(), report.passed, report.error_kind


def cmd_semigeneric(args: argparse.Namespace, field: FieldSpec) -> Outcome:
    """Certified semigeneric section and its minors ideal."""
    section = semigeneric_section(args.n, args.seed, field)
    check = minors_ideal_check(section)
    payload = {"section": section.to_dict(), "minorsIdeal": check.to_dict()}
    return payload, section.certificate.passed and check.equal, None


def cmd_quiver(args: argparse.Namespace, field: FieldSpec) -> Outcome:
    """Exhaustive King-slope scan of the grading quiver of E_n."""
    report = quiver_report(args.n, args.workers, progress=args.verbose > 0)
    return report.to_dict(), report.passed, None


def cmd_cohom_t(args: argparse.Namespace, field: FieldSpec) -> Outcome:
    """Cohomology of O_T(i h + j l), and chi on the surface when --n is given."""
    vector = cohom_t(args.i, args.j)
    payload = vector.to_dict()
    if args.n is not None:
        payload["eulerS"] = euler_s_report(args.n, args.i, args.j).to_dict()
    return payload, True, None


def cmd_cover(args: argparse.Namespace, field: FieldSpec) -> Outcome:
    """Integer classes (x, y) of the double-cover system."""
    report = cover_solutions(args.n)
    return report.to_dict(), report.passed, None


def cmd_selftest(args: argparse.Namespace, field: FieldSpec) -> Outcome:
    """The verification battery."""
    report = run_selftest(args.quick, args.seed, field)
    return report.to_dict(), report.passed, report.error_kind


def build_parser() -> argparse.ArgumentParser:
    """The argument parser with every subcommand."""
    parser = argparse.ArgumentParser(
        prog="logtan",
        description="Exact verification of logarithmic tangent sheaf computations.",
    )
    parser.add_argument(
        "--rationals", action="store_true", help="Work over Q instead of GF(p)."
    )
    parser.add_argument("--prime", type=int, default=None, help="Characteristic of GF(p).")
    parser.add_argument("--seed", type=int, default=None, help="Seed for every random choice.")
    parser.add_argument(
        "--output", type=Path, default=None, help="Write the JSON envelope here instead of stdout."
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="More logging.")
    parser.add_argument("-q", "--quiet", action="store_true", help="Errors only.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable[..., Outcome], help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add(
        "stability",
        cmd_stability,
        "Slope stability of T_D: Corollary B (no syzygy of the partials in degree q), "
        "Theorem C (total Tjurina number below (d-q-1)(d-1)^(N-1), with the "
        "du Plessis-Wall bound) and the cone obstruction.",
    )
    p.add_argument("--poly", help="Polynomial text, e.g. 'x0^3 + x1^3 + x2^3'.")
    p.add_argument("--input", help="File holding the polynomial text.")
    p.add_argument("--vars", type=int, required=True, help="Number of variables N+1.")
    p.add_argument(
        "--cross-field", action="store_true", help="Compare verdicts over Q and two primes."
    )
    p.add_argument(
        "--tjurina-only",
        action="store_true",
        help="Skip the Corollary B rung; decide isolated singularities by Theorem C.",
    )

    p = add(
        "hilbert",
        cmd_hilbert,
        "Hilbert function and polynomial of R/I (Macaulay: R/I and R/in(I) agree), "
        "cross-checked by dense linear algebra.",
    )
    p.add_argument("--poly", action="append", required=True, help="Generator (repeatable).")
    p.add_argument("--vars", type=int, required=True, help="Number of variables.")
    p.add_argument("--max-degree", type=int, default=10, help="Largest degree computed.")

    p = add(
        "resolution",
        cmd_resolution,
        "Betti table of the minimal free resolution of R/I (Hilbert syzygy "
        "theorem; the K-polynomial certifies completeness).",
    )
    p.add_argument("--poly", action="append", required=True, help="Generator (repeatable).")
    p.add_argument("--vars", type=int, required=True, help="Number of variables.")
    p.add_argument("--max-steps", type=int, default=None, help="Last homological index.")

    p = add(
        "det-suite",
        cmd_det_suite,
        "Gulliksen-Negard resolution of the determinant, the submaximal-minors "
        "identity of a semigeneric section, the quadratic Lefschetz lemma, restriction "
        "vanishing A_t = 0 for t >= n-1 and the Torelli fiber-rank formula "
        "for the generic or symmetric determinant.",
    )
    p.add_argument("--n", type=int, required=True, help="Matrix size.")
    p.add_argument(
        "--flavor", choices=[f.value for f in Flavor], default=Flavor.GENERIC.value
    )
    p.add_argument("--fiber-trials", type=int, default=20, help="Samples per corank.")

    p = add(
        "semigeneric",
        cmd_semigeneric,
        "Semigeneric section M0 + x0*E_11: its ideal of submaximal minors equals "
        "x0*m0^(n-2) + m0^(n-1).",
    )
    p.add_argument("--n", type=int, required=True, help="Matrix size.")

    p = add(
        "quiver",
        cmd_quiver,
        "King semistability lemma for the principal-parts bundle E_n: exhaustive "
        "King-slope scan of the subrepresentations of its grading quiver.",
    )
    p.add_argument("--n", type=int, required=True, help="Bundle index.")
    p.add_argument("--workers", type=int, default=None, help="Process-pool size.")

    p = add(
        "cohomT",
        cmd_cohom_t,
        "Line-bundle cohomology formula for O_T(i h + j l) on T = P(O(1)+O) over "
        "P^2, and the Euler characteristic formula for O_S on the surface S.",
    )
    p.add_argument("--i", type=int, required=True, help="Coefficient of h.")
    p.add_argument("--j", type=int, required=True, help="Coefficient of l.")
    p.add_argument("--n", type=int, default=None, help="Also report chi(O_S((1+i)h + j l)).")

    p = add(
        "cover",
        cmd_cover,
        "Double-cover proposition: integer solutions of the class constraints and "
        "degree equation for rank-one sheaves on the 2:1 cover.",
    )
    p.add_argument("--n", type=int, required=True, help="Degree, at least 3.")

    p = add("selftest", cmd_selftest, "Run the acceptance battery over every statement above.")
    p.add_argument("--quick", action="store_true", help="Small sizes only.")
    return parser


def configure_logging(args: argparse.Namespace, settings: Settings) -> None:
    """Log to stderr at the level chosen by -v/-q or ``Settings.log_level``."""
    if args.quiet:
        level = logging.ERROR
    elif args.verbose >= 2:
        level = logging.DEBUG
    elif args.verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, settings.log_level.upper(), logging.WARNING)
    logging.basicConfig(
        stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s"
    )


def _config_payload(args: argparse.Namespace, field: FieldSpec) -> dict[str, Any]:
    skip = {"handler", "output", "verbose", "quiet", "command"}
    config = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    config["field"] = field.label
    return config


def _exit_code(passed: bool, error_kind: ErrorKind | None) -> int:
    if error_kind == ErrorKind.SCALE or error_kind == ErrorKind.DEGENERACY:
        return EXIT_UNREACHABLE
    return EXIT_PASS if passed else EXIT_FAIL


def run(argv: list[str] | None = None) -> int:
    """Parse arguments, dispatch, print the envelope and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS

    settings = get_settings()
    configure_logging(args, settings)
    if args.seed is None:
        args.seed = settings.seed

    try:
        field = _field(args, settings)
        report, passed, error_kind = args.handler(args, field)
    except (ScaleError, DegreeBoundExceeded, GenericityError) as e:
        print(f"logtan {args.command}: {e}", file=sys.stderr)
        return EXIT_UNREACHABLE
    except (ValueError, OSError) as e:
        print(f"logtan {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except LogtanError as e:
        print(f"logtan {args.command}: {e}", file=sys.stderr)
        return EXIT_FAIL

    envelope = {
        "schemaVersion": SCHEMA_VERSION,
        "command": args.command,
        "config": _config_payload(args, field),
        "report": report,
        "pass": passed,
    }
    text = dumps(envelope) + "\n"
    if args.output is not None:
        args.output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return _exit_code(passed, error_kind)


def main() -> None:
    """Console-script entry point."""
    raise SystemExit(run())


if __name__ == "__main__":
    main()
