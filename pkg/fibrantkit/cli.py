"""
Command-line interface.

Exit codes: 0 when nothing failed, 1 when a check failed or was refuted,
2 on usage, parse or validation errors. Logs go to stderr; reports and
summaries go to stdout.
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from fibrantkit import __version__
from fibrantkit.config import Settings, configure
from fibrantkit.exceptions import FibrantKitError, ParseError, UnknownObject, ValidationError
from fibrantkit.fibrant import check_cfo_axioms, cocycle_category, functional_correspondences, homotopy_hom
from fibrantkit.fixtures import GENERATORS, dump_fixture, generate_fixture, load_fixture
from fibrantkit.homotopy import homology
from fibrantkit.simplicial import nerve
from fibrantkit.suite import TheoremSuite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_USAGE = 2


def _parse_params(pairs: List[str]) -> Dict[str, Any]:
    """key=value pairs; integer values become ints."""
    params: Dict[str, Any] = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise ValueError(f"generator parameter {pair!r} is not key=value")
        try:
            params[key] = int(value)
        except ValueError:
            params[key] = value
    return params


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fibrantkit",
        description="Finite categories of fibrant objects: constructions and theorem checks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG level")
    sub = parser.add_subparsers(dest="command", required=True)

    validate = sub.add_parser("validate", help="Load a fixture and check the axioms")
    validate.add_argument("fixture")

    for name, text in (("nerve", "Print level sizes of the truncated nerve"),
                       ("homology", "Print integral homology of the nerve")):
        p = sub.add_parser(name, help=text)
        p.add_argument("fixture")
        p.add_argument("--dim", type=int, default=None, help="Truncation dimension T")

    cocycles = sub.add_parser("cocycles", help="Summarize the cocycle categories from X to Y")
    cocycles.add_argument("fixture")
    cocycles.add_argument("X")
    cocycles.add_argument("Y")

    hom = sub.add_parser("hom", help="Print the homotopy hom-set from X to Y")
    hom.add_argument("fixture")
    hom.add_argument("X")
    hom.add_argument("Y")

    suite = sub.add_parser("suite", help="Run the theorem suite")
    suite.add_argument("fixture")
    suite.add_argument("--dim", type=int, default=None, help="Truncation dimension T")
    suite.add_argument("--kmax", type=int, default=None)
    suite.add_argument("--lmax", type=int, default=None)
    suite.add_argument("--report", choices=["json", "text"], default="text")
    suite.add_argument("-j", "--workers", type=int, default=None, help="Worker threads")
    suite.add_argument("--timings", action="store_true", default=None, help="Record wall time per check")

    generate = sub.add_parser("generate", help="Generate a fixture")
    generate.add_argument("kind", choices=sorted(GENERATORS))
    generate.add_argument("params", nargs="*", metavar="key=value")
    generate.add_argument("-o", "--output", required=True)
    return parser


def _settings(args: argparse.Namespace) -> Settings:
    overrides = {
        "dim": getattr(args, "dim", None),
        "kmax": getattr(args, "kmax", None),
        "lmax": getattr(args, "lmax", None),
        "workers": getattr(args, "workers", None),
        "record_timings": getattr(args, "timings", None),
    }
    return configure(Settings.from_env(overrides))


def _validate(args: argparse.Namespace) -> int:
    fixture = load_fixture(args.fixture)
    report = check_cfo_axioms(fixture.build())
    expected = set(fixture.expect.expected_failures())
    unexpected = [row.id for row in report.checks if row.status.is_failure != (row.id in expected)]
    C = fixture.build().base
    print(f"{fixture.name}: {len(C.objects)} objects, {len(C.morphisms)} morphisms")
    for row in report.checks:
        marker = " (expected)" if row.id in expected else ""
        print(f"  {row.id}: {row.status.value}{marker}")
    return EXIT_FAILURES if unexpected else EXIT_OK


def _nerve(args: argparse.Namespace) -> int:
    settings = _settings(args)
    S = nerve(load_fixture(args.fixture).build().base, settings.dim)
    for n, level in enumerate(S.levels):
        print(f"{n}: {len(level)} simplices, {len(S.nondegenerate(n))} nondegenerate")
    return EXIT_OK


def _homology(args: argparse.Namespace) -> int:
    settings = _settings(args)
    profile = homology(nerve(load_fixture(args.fixture).build().base, settings.dim))
    for n, group in enumerate(profile.groups):
        print(f"H{n} = {group}")
    return EXIT_OK


def _cocycles(args: argparse.Namespace) -> int:
    s = load_fixture(args.fixture).build()
    every = cocycle_category(s, s.rel.weq, args.X, args.Y)
    special = cocycle_category(s, s.V, args.X, args.Y)
    fcorr, _ = functional_correspondences(s, args.X, args.Y)
    print(f"cocycles {args.X} -> {args.Y}: {len(every.objects)} objects, {len(every.morphisms)} morphisms")
    print(f"V-cocycles: {len(special.objects)} objects, {len(special.components())} components")
    print(f"functional correspondences: {len(fcorr.objects)}")
    return EXIT_OK


def _hom(args: argparse.Namespace) -> int:
    hom_set = homotopy_hom(load_fixture(args.fixture).build(), args.X, args.Y)
    print(f"[{args.X}, {args.Y}] has {hom_set.size} element(s)")
    for z in hom_set.representatives:
        print(f"  {z.objects[0]} <-{z.arrows[0]}- {z.objects[1]} -{z.arrows[1]}-> {z.objects[2]}")
    return EXIT_OK


def _suite(args: argparse.Namespace) -> int:
    settings = _settings(args)
    report = TheoremSuite(settings).run(load_fixture(args.fixture))
    sys.stdout.write(report.to_json() if args.report == "json" else report.to_text())
    return EXIT_FAILURES if report.failures else EXIT_OK


def _generate(args: argparse.Namespace) -> int:
    fixture = generate_fixture(args.kind, **_parse_params(args.params))
    path = dump_fixture(fixture, args.output)
    print(f"wrote {path}")
    return EXIT_OK


COMMANDS = {
    "validate": _validate,
    "nerve": _nerve,
    "homology": _homology,
    "cocycles": _cocycles,
    "hom": _hom,
    "suite": _suite,
    "generate": _generate,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.command](args)
    except (ParseError, ValidationError, UnknownObject, OSError, ValueError) as e:
        print(f"fibrantkit: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FibrantKitError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"fibrantkit: {e}", file=sys.stderr)
        return EXIT_FAILURES


if __name__ == "__main__":
    sys.exit(main())
