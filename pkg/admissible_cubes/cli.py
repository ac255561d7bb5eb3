"""
Command-line front door: ``admissible-cubes <command> --input FILE``.

Exit codes: 0 when the check ran and passed, 1 when it ran and a property or
implication failed, 2 on input or schema errors.
"""

import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .adjugates import cofactor_adjugate, main_theorem_check, verify_adjugate
from .bue import BeMode, be_check
from .cubes import (
    AdmissibilityMethod,
    Cube,
    fib_of_family,
    is_admissible,
    is_fibered,
    koszul_complex,
    total_complex,
)
from .doublecubes import DctVariant, dct_check
from .exceptions import CubeAlgebraError, SchemaError, ValidationError
from .formats import (
    FamilyInstance,
    be_report_to_dict,
    bundle_to_dict,
    complex_to_dict,
    cube_to_dict,
    dumps,
    load_instance,
    make_report,
)
from .lattices import (
    FamilyMode,
    TableLattice,
    TransferVariant,
    distributive_law_check,
    family_class,
    ideal_map_check,
    is_distributive,
    is_modular,
    remark_checks,
    semimodular_check,
    sequence_conditions,
    transfer_check,
)
from .modules import FPModule
from .rings import RingDescriptor
from .selftest import SUITE_SIZES, selftest

logger = logging.getLogger(__name__)

EXIT_PASSED = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

COMMANDS = ("check", "tot", "homology", "koszul", "fib", "adjugate-verify",
            "adjugate-construct", "main-theorem", "dct", "be", "lattice", "selftest")

# Input kinds accepted per command
ACCEPTED_KINDS = {
    "check": ("cube",),
    "tot": ("cube",),
    "homology": ("complex", "be-complex", "cube"),
    "koszul": (),
    "fib": ("family",),
    "adjugate-verify": ("adjugate-bundle",),
    "adjugate-construct": ("cube",),
    "main-theorem": ("adjugate-bundle",),
    "dct": ("double",),
    "be": ("be-complex", "complex", "cube"),
    "lattice": ("lattice", "family"),
    "selftest": (),
}

Outcome = Tuple[bool, Dict[str, Any], Any]


def _invariants(values: Sequence[Any], ring: RingDescriptor) -> List[str]:
    return [ring.format(v) for v in values]


def _homology_dict(complex_: Any) -> Dict[str, List[str]]:
    return {str(k): _invariants(complex_.homology(k).invariant_factors, complex_.ring)
            for k in complex_.degrees()}


# Commands


def cmd_check(x: Cube, args: argparse.Namespace) -> Outcome:
    validation = x.validate()
    if not validation.valid:
        details = {"valid": False, "ill_defined": validation.ill_defined,
                   "failing_square": validation.failing_square}
        return False, details, validation.failing_square or validation.ill_defined
    method = AdmissibilityMethod(args.method or AdmissibilityMethod.RECURSIVE.value)
    report = is_admissible(x, method)
    details = {
        "valid": True,
        "monic": validation.is_monic,
        "admissible": report.admissible,
        "method": method.value,
        "fibered": is_fibered(x).fibered if validation.is_monic else False,
    }
    return report.admissible, details, report.witness


def cmd_tot(x: Cube, args: argparse.Namespace) -> Outcome:
    tot = total_complex(x.require_valid())
    details = {"complex": complex_to_dict(tot), "homology": _homology_dict(tot)}
    return True, details, None


def cmd_homology(value: Any, args: argparse.Namespace) -> Outcome:
    complex_ = total_complex(value) if isinstance(value, Cube) else value
    return True, {"homology": _homology_dict(complex_)}, None


def cmd_koszul(args: argparse.Namespace) -> Outcome:
    if not args.elements:
        raise ValidationError("--elements is required")
    ring = args.ring or RingDescriptor.integers()
    fs = [ring.element(v) for v in args.elements.split(",")]
    one = FPModule.free(ring, 1)
    complex_ = koszul_complex(fs, one)
    conditions = sequence_conditions(fs, one)
    details = {
        "complex": complex_to_dict(complex_),
        "homology": _homology_dict(complex_),
        "typical_admissible": conditions.typical_admissible,
        "x_sequence": conditions.x_sequence,
        "lattice_admissible": conditions.admissible,
        "lattice_universally_admissible": conditions.universally_admissible,
        "agree": conditions.agree,
    }
    return conditions.agree, details, None if conditions.agree else "conditions disagree"


def cmd_fib(value: FamilyInstance, args: argparse.Namespace) -> Outcome:
    built = value.subobjects
    if built is None:
        raise ValidationError("fib needs a family of subobjects")
    members = {s: built.lattice.subobject(e) for s, e in value.family.members.items()}
    maps = {s: m.to_module().structure_map for s, m in members.items()}
    fib = fib_of_family(maps).cube
    admissible = is_admissible(fib).admissible
    universal = family_class(value.family, FamilyMode.UNIVERSALLY_ADMISSIBLE).holds
    details = {"cube": cube_to_dict(fib), "admissible": admissible,
               "universally_admissible": universal}
    agree = admissible == universal
    return agree, details, None if agree else "Fib admissibility disagrees with the family"


def cmd_adjugate_verify(value: Any, args: argparse.Namespace) -> Outcome:
    x, adj = value
    report = verify_adjugate(x, adj, regular=True)
    details = {"valid": report.valid, "axiom_i": report.axiom_i,
               "axiom_ii": report.axiom_ii, "regular": report.regular}
    return report.axiom_i and report.axiom_ii, details, report.witness


def cmd_adjugate_construct(x: Cube, args: argparse.Namespace) -> Outcome:
    adj = cofactor_adjugate(x.require_valid())
    report = verify_adjugate(x, adj)
    return report.valid, {"bundle": bundle_to_dict(x, adj)}, report.witness


def cmd_main_theorem(value: Any, args: argparse.Namespace) -> Outcome:
    x, adj = value
    report = main_theorem_check(x, adj)
    details = {"adjugate_valid": report.adjugate_valid, "regular": report.regular,
               "monic": report.monic, "admissible": report.admissible,
               "implication_ok": report.implication_ok}
    return report.implication_ok, details, report.witness


def cmd_dct(value: Any, args: argparse.Namespace) -> Outcome:
    variants = [DctVariant(args.method)] if args.method else list(DctVariant)
    details: Dict[str, Any] = {}
    ok = True
    witness = None
    for variant in variants:
        report = dct_check(value, variant)
        details[variant.value] = {"hypotheses": report.hypotheses,
                                  "conclusion": report.conclusion,
                                  "implication_ok": report.implication_ok}
        if not report.implication_ok:
            ok = False
            witness = witness or f"{variant.value}: {report.witness}"
    return ok, details, witness


def cmd_be(value: Any, args: argparse.Namespace) -> Outcome:
    complex_ = total_complex(value) if isinstance(value, Cube) else value
    mode = BeMode(args.method) if args.method else BeMode.CRITERION_ONLY
    report = be_check(complex_, mode)
    witness = None if report.passed else {"i": report.witness}
    return report.passed, be_report_to_dict(report), witness


def _lattice_details(lattice: TableLattice) -> Dict[str, Any]:
    modular = is_modular(lattice)
    return {
        "size": lattice.size,
        "modular": modular.modular,
        "modular_witness": modular.witness,
        "cancellation_agrees": modular.agree,
        "semimodular": semimodular_check(lattice),
        "distributive": is_distributive(lattice),
        "family_distributive": distributive_law_check(lattice),
    }


def cmd_lattice(value: Any, args: argparse.Namespace) -> Outcome:
    if isinstance(value, TableLattice):
        details = _lattice_details(value)
        ok = details["semimodular"] and details["cancellation_agrees"]
        return ok, details, None if ok else details["modular_witness"]
    family = value.family
    classes = {}
    for mode in FamilyMode:
        report = family_class(family, mode)
        classes[mode.value] = {"holds": report.holds, "witness": report.witness}
    remarks = remark_checks(family)
    details: Dict[str, Any] = {"classes": classes, "remarks": remarks,
                               "lattice_size": family.lattice.size}
    ok = all(remarks.values())
    if len(family) <= 4:
        ideal = ideal_map_check(family)
        details["ideal_map"] = {"assertion1": ideal.assertion1, "assertion2": ideal.assertion2,
                                "assertion3": ideal.assertion3,
                                "implications_ok": ideal.implications_ok}
        ok = ok and ideal.implications_ok
    transfers = {}
    for universal in (False, True):
        suffix = "universal" if universal else "admissible"
        if value.y is not None:
            report = transfer_check(TransferVariant.PROP, family, y=value.y, universal=universal)
            transfers[f"{report.variant.value}:{suffix}"] = report.implication_ok
        if value.upper is not None:
            for variant in (TransferVariant.COR, TransferVariant.COR_REMARK):
                report = transfer_check(variant, family, upper=value.upper, universal=universal)
                transfers[f"{report.variant.value}:{suffix}"] = report.implication_ok
    details["transfers"] = transfers
    ok = ok and all(transfers.values())
    return ok, details, None


def cmd_selftest(args: argparse.Namespace) -> Outcome:
    report = selftest(seed=args.seed, size=args.size)
    failing = next((r.to_dict() for r in report.results if not r.passed), None)
    return report.passed, report.to_dict(), failing


HANDLERS: Dict[str, Callable[[Any, argparse.Namespace], Outcome]] = {
    "check": cmd_check,
    "tot": cmd_tot,
    "homology": cmd_homology,
    "fib": cmd_fib,
    "adjugate-verify": cmd_adjugate_verify,
    "adjugate-construct": cmd_adjugate_construct,
    "main-theorem": cmd_main_theorem,
    "dct": cmd_dct,
    "be": cmd_be,
    "lattice": cmd_lattice,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="admissible-cubes",
        description="Exact checks on cubes of modules, adjugates, lattices and complexes.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", help="Instance file (JSON)")
    parser.add_argument("--report", help="Also write the report to this path")
    parser.add_argument("--seed", type=int, default=0, help="Master seed for selftest")
    parser.add_argument("--size", choices=sorted(SUITE_SIZES), default="small")
    parser.add_argument("--method", help="Variant: admissibility method, dct/bigadm, "
                                         "criterion/equivalence")
    parser.add_argument("--ring-override", help="Reinterpret entries over this ring")
    parser.add_argument("--elements", help="Comma-separated ring elements for koszul")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    return parser


def run(args: argparse.Namespace) -> Tuple[int, Dict[str, Any]]:
    """Dispatch one command and build its report."""
    digest = None
    args.ring = RingDescriptor.parse(args.ring_override) if args.ring_override else None
    if args.command == "selftest":
        ok, details, witness = cmd_selftest(args)
    elif args.command == "koszul":
        ok, details, witness = cmd_koszul(args)
    else:
        if not args.input:
            raise ValidationError("--input is required")
        kind, value, digest = load_instance(args.input, args.ring)
        if kind not in ACCEPTED_KINDS[args.command]:
            raise SchemaError(f"Invalid kind {kind!r} for {args.command}")
        ok, details, witness = HANDLERS[args.command](value, args)
    report = make_report(args.command, ok, details, digest, witness)
    return (EXIT_PASSED if ok else EXIT_FAILED), report


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        code, report = run(args)
    except (ValidationError, SchemaError) as e:
        code, report = EXIT_INPUT, make_report(args.command, False, {"error": str(e)})
    except (CubeAlgebraError, ValueError) as e:
        code, report = EXIT_INPUT, make_report(args.command, False,
                                               {"error": f"{type(e).__name__}: {e}"})
    text = dumps(report)
    sys.stdout.write(text + "\n")
    if args.report:
        with open(args.report, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
