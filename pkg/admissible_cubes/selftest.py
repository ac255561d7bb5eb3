"""
Randomized self-test suites: each one samples a seeded corpus and checks that
a family of implications is never falsified.
"""

import logging
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from .adjugates import (
    cofactor_adjugate,
    corollary_check,
    main_theorem_check,
    two_pullback_check,
    typical_adjugate,
)
from .bue import BeMode, be_check, fitting_ideal
from .cubes import (
    AdmissibilityMethod,
    FiberedMethod,
    SequenceMode,
    is_admissible,
    is_fibered,
    koszul_complex,
    sequence_check,
    totisom_check,
)
from .doublecubes import DctVariant, dct_check
from .exceptions import CubeAlgebraError, ValidationError
from .generators import (
    INTEGERS,
    be_corpus,
    cofactor_cube,
    cube_corpus,
    integer_family,
    modular_lattice,
    patched_double,
    random_family,
    random_matrix,
    random_ring,
    random_upper,
    small_integer_pairs,
    subgroup_family,
    typical_integer_cube,
    typical_pair,
)
from .lattices import (
    TableLattice,
    TransferVariant,
    fib_admissibility_bridge,
    is_modular,
    remark_checks,
    semimodular_check,
    sequence_conditions,
    transfer_check,
)
from .linalg import Matrix, adjugate, determinant, smith_normal_form
from .modules import FPModule, ModuleMorphism

logger = logging.getLogger(__name__)

# Cases per suite for each --size
SUITE_SIZES = {
    "small": {1: 20, 2: 12, 3: 10, 4: 10, 5: 40, 6: 10, 7: 6, 8: 24, 9: 12, 10: 40},
    "medium": {1: 200, 2: 100, 3: 100, 4: 100, 5: 500, 6: 100, 7: 100, 8: 200, 9: 100, 10: 500},
}

SUITE_NAMES = {
    1: "koszul_admissibility_bridge",
    2: "admissibility_methods",
    3: "total_complex_isomorphism",
    4: "fibered_admissible_relation",
    5: "lattice_laws",
    6: "main_theorem",
    7: "double_cube_theorem",
    8: "exactness_criterion",
    9: "sequence_corollary",
    10: "linear_algebra",
}


@dataclass
class SuiteResult:
    suite: int
    name: str
    cases: int = 0
    failures: int = 0
    witness: Optional[str] = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, witness: str) -> None:
        self.cases += 1
        if not ok:
            self.failures += 1
            if self.witness is None:
                self.witness = witness

    def to_dict(self) -> Dict[str, object]:
        return {
            "suite": self.suite,
            "name": self.name,
            "cases": self.cases,
            "failures": self.failures,
            "passed": self.passed,
            "witness": self.witness,
        }


@dataclass
class SelftestReport:
    seed: int
    size: str
    results: List[SuiteResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> Dict[str, object]:
        return {
            "seed": self.seed,
            "size": self.size,
            "passed": self.passed,
            "cases": sum(r.cases for r in self.results),
            "failures": sum(r.failures for r in self.results),
            "suites": [r.to_dict() for r in self.results],
        }


# Suites


def suite_koszul_bridge(rng: random.Random, count: int, result: SuiteResult) -> None:
    one = FPModule.free(INTEGERS, 1)
    for _ in range(count):
        fs = integer_family(rng, rng.choice((2, 3)))
        conditions = sequence_conditions(fs, one)
        result.record(conditions.agree, f"f={fs}")


def suite_admissibility_methods(rng: random.Random, count: int, result: SuiteResult) -> None:
    for i, x in enumerate(cube_corpus(rng, count)):
        verdicts = {m.value: is_admissible(x, m).admissible for m in AdmissibilityMethod}
        result.record(len(set(verdicts.values())) == 1, f"cube {i}: {verdicts}")


def suite_totisom(rng: random.Random, count: int, result: SuiteResult) -> None:
    done = attempts = 0
    while done < count and attempts < 10 * count:
        attempts += 1
        x = typical_integer_cube(rng, rng.randint(1, 3))
        comparison = totisom_check(x)
        if not comparison.applicable:
            continue
        done += 1
        result.record(comparison.agree, f"H_* {comparison.right} vs {comparison.left}")


def suite_fibered(rng: random.Random, count: int, result: SuiteResult) -> None:
    for i in range(count):
        x = typical_integer_cube(rng, rng.randint(2, 3))
        if is_admissible(x).admissible:
            fibered = is_fibered(x).fibered
            agree = fibered == is_fibered(x, FiberedMethod.COMPARISON).fibered
            result.record(fibered and agree, f"admissible cube {i} is not fibered")
        ambient, members = subgroup_family(rng, rng.randint(1, 3), ("a", "b", "c"))
        bridge = fib_admissibility_bridge(ambient, members)
        result.record(bridge.agree, f"subgroup family {i}: {bridge}")


def suite_lattices(rng: random.Random, count: int, result: SuiteResult) -> None:
    pentagon = TableLattice.pentagon()
    n5 = is_modular(pentagon)
    result.record(not n5.modular and n5.witness is not None and n5.agree,
                  "pentagon passed the modular law")
    result.record(semimodular_check(pentagon), "pentagon failed the semi-modular law")
    for i in range(count):
        lattice = modular_lattice(rng)
        modular = is_modular(lattice)
        result.record(modular.modular and modular.agree, f"lattice {i} is not modular")
        result.record(semimodular_check(lattice), f"lattice {i} failed the semi-modular law")
        family = random_family(rng, lattice, rng.randint(1, 4))
        remarks = remark_checks(family)
        result.record(all(remarks.values()), f"lattice {i} remarks {remarks}")
        y = rng.randrange(lattice.size)
        upper = random_upper(rng, family)
        for universal in (False, True):
            reports = [
                transfer_check(TransferVariant.PROP, family, y=y, universal=universal),
                transfer_check(TransferVariant.COR, family, upper=upper, universal=universal),
                transfer_check(TransferVariant.COR_REMARK, family, upper=upper,
                               universal=universal),
            ]
            for report in reports:
                result.record(report.implication_ok,
                              f"lattice {i} {report.variant.value} universal={universal}")


def suite_main_theorem(rng: random.Random, count: int, result: SuiteResult) -> None:
    for i in range(count):
        if i % 2 == 0:
            x, adj = typical_pair(rng, rng.randint(1, 3))
        else:
            x = cofactor_cube(rng, rng.randint(1, 2), rng.randint(1, 3))
            adj = cofactor_adjugate(x)
        report = main_theorem_check(x, adj)
        result.record(report.implication_ok, f"instance {i}: {report.witness or report.admissible}")


def suite_dct(rng: random.Random, count: int, result: SuiteResult) -> None:
    done = attempts = 0
    while done < count and attempts < 4 * count:
        attempts += 1
        built = patched_double(rng, rng.randint(1, 3), regular=rng.random() < 0.7)
        if built is None:
            continue
        x, adj, double = built
        done += 1
        for variant in DctVariant:
            report = dct_check(double, variant)
            result.record(report.implication_ok, f"{variant.value}: {report.hypotheses}")
        typical = main_theorem_check(x, adj)
        if typical.regular:
            result.record(two_pullback_check(x, adj), "2^* of the patched dual is not typical")


def suite_be(rng: random.Random, count: int, result: SuiteResult) -> None:
    one = FPModule.free(INTEGERS, 1)
    exact = be_check(koszul_complex([2, 3], one))
    result.record(
        exact.criterion and exact.spherical
        and [i.canonical for i in exact.fitting] == [1, 1]
        and [str(g) for g in exact.grades] == ["inf", "inf"],
        "Koszul(2,3) worked example")
    inexact = be_check(koszul_complex([2, 2], one))
    result.record(
        not inexact.criterion and not inexact.spherical and inexact.witness == 2
        and inexact.fitting[1].canonical == 2 and str(inexact.grades[1]) == "1",
        "Koszul(2,2) worked example")
    for i, complex_ in enumerate(be_corpus(rng, count)):
        report = be_check(complex_, BeMode.EQUIVALENCE_TEST)
        result.record(report.equivalent, f"complex {i}: r={report.r} spherical={report.spherical}")


def suite_corollary(rng: random.Random, count: int, result: SuiteResult) -> None:
    one = FPModule.free(INTEGERS, 1)
    for i in range(count):
        fs, gs = small_integer_pairs(rng, rng.randint(1, 3))
        report = corollary_check(fs, gs, INTEGERS)
        result.record(report.implication_ok, f"f={fs} g={gs}")
        if report.h_sequence:
            x, adj = typical_adjugate(fs, gs, one)
            pathway = main_theorem_check(x, adj).admissible.get("", False)
            direct = sequence_check(fs, one, SequenceMode.X_SEQUENCE).is_sequence
            result.record(pathway == direct, f"pathways differ for f={fs} g={gs}")


def _snf_contract(a: Matrix) -> bool:
    ring = a.ring
    snf = smith_normal_form(a)
    if snf.u @ a @ snf.v != snf.d:
        return False
    if snf.u @ snf.u_inv != Matrix.identity(ring, a.rows):
        return False
    for i in range(snf.d.rows):
        for j in range(snf.d.cols):
            if i != j and snf.d[i, j] != ring.zero:
                return False
    diagonal = snf.diagonal
    return all(ring.divides(diagonal[k], diagonal[k + 1]) for k in range(len(diagonal) - 1))


def suite_linear_algebra(rng: random.Random, count: int, result: SuiteResult) -> None:
    for i in range(count):
        ring = random_ring(rng)
        a = random_matrix(rng, ring, rng.randint(1, 8), rng.randint(1, 8))
        result.record(_snf_contract(a), f"SNF contract over {ring} on matrix {i}")
        if i % 2 == 0:
            n = rng.randint(1, 5)
            x = random_matrix(rng, INTEGERS, n, n)
            ok = adjugate(x) @ x == Matrix.scalar(INTEGERS, n, determinant(x))
            result.record(ok, f"adj(X) X != det(X) I on matrix {i}")
        phi = ModuleMorphism(FPModule.free(ring, a.cols), FPModule.free(ring, a.rows), a)
        ideals = [fitting_ideal(phi, t) for t in range(min(a.rows, a.cols) + 2)]
        chain = all(ideals[t].contains(ideals[t + 1].canonical) for t in range(len(ideals) - 1))
        result.record(chain, f"Fitting chain over {ring} on matrix {i}")


SUITES: Dict[int, Callable[[random.Random, int, SuiteResult], None]] = {
    1: suite_koszul_bridge,
    2: suite_admissibility_methods,
    3: suite_totisom,
    4: suite_fibered,
    5: suite_lattices,
    6: suite_main_theorem,
    7: suite_dct,
    8: suite_be,
    9: suite_corollary,
    10: suite_linear_algebra,
}


def run_suite(suite: int, seed: int = 0, size: str = "small") -> SuiteResult:
    """Run one suite with its own generator ``Random(f"{seed}:{suite}")``."""
    if size not in SUITE_SIZES:
        raise ValidationError(f"Invalid size: {size!r}")
    if suite not in SUITES:
        raise ValidationError(f"Invalid suite: {suite}")
    result = SuiteResult(suite, SUITE_NAMES[suite])
    rng = random.Random(f"{seed}:{suite}")
    start = time.perf_counter()
    try:
        SUITES[suite](rng, SUITE_SIZES[size][suite], result)
    except CubeAlgebraError as e:
        result.record(False, f"{type(e).__name__}: {e}")
    result.seconds = time.perf_counter() - start
    logger.info("Suite %d (%s): %d cases, %d failures", suite, result.name,
                result.cases, result.failures)
    return result


def selftest(seed: int = 0, size: str = "small",
             suites: Optional[List[int]] = None) -> SelftestReport:
    """
    Run the self-test suites.

    Example:
        >>> selftest(seed=0, size="small", suites=[10]).passed
        True
    """
    report = SelftestReport(seed, size)
    for suite in suites or sorted(SUITES):
        logger.debug("Running suite %d", suite)
        report.results.append(run_suite(suite, seed, size))
    return report
