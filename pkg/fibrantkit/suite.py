"""
Theorem suite.

Runs every check on one fixture: the axioms, the property sweeps, Thomason
and category-of-elements comparisons, the calculus of cocycles, right
fractions, the R category, zigzag reduction, special cocycles and the
homotopy hom-set oracles. Independent checks run on a thread pool; rows are
sorted by check id, so reports do not depend on scheduling.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, NamedTuple, Optional, Type

from fibrantkit.config import Settings, configure, get_settings
from fibrantkit.exceptions import FibrantKitError, SizeCapExceeded
from fibrantkit.fibrant import (
    CfoStructure,
    build_R,
    certify_cocycle_calculus,
    check_cfo_axioms,
    check_cisinski_axioms,
    cisinski_from_cfo,
    cocycle_category,
    homotopy_hom,
    homotopy_hom_composition,
    is_homotopically_replete,
    R_fibre_comma_isomorphism,
    reduce_zigzag,
    slice_structure,
    verify_reduction,
    weak_arrow,
)
from fibrantkit.fincat import inclusion_functor, is_grothendieck_fibration, order_key, strict_fibre
from fibrantkit.fixtures import Expectations, Fixture, pair_key, split_pair
from fibrantkit.homotopy import is_weakly_contractible, weak_equivalence_evidence
from fibrantkit.models import CheckResult, CheckStatus, Report
from fibrantkit.relcat import ZigzagType, check_right_fractions, enumerate_zigzags, insert_identity
from fibrantkit.sweeps import (
    CofinalityCache,
    elements_rows,
    pool_functors,
    sweep_adjoint_pullback,
    sweep_cofinal_fully_faithful,
    sweep_fibration_cofinality,
    sweep_pool,
    sweep_quillen_a,
    thomason_rows,
)

logger = logging.getLogger(__name__)

SUITE_NAME = "theorem-suite"
ROUND_TRIP = ZigzagType.of(-1, 1, 1)
SPLIT = ZigzagType.of(-1, 1, -1, 1)

ANCHORS = {
    "axiom": "axioms of a category of fibrant objects",
    "cisinski": "axioms of a fibration category",
    "cisinski-slice": "the slice of a fibration category over an object is a fibration category",
    "sweep": "property sweeps over small categories",
    "thomason": "homotopy colimits of nerves against oplax colimits",
    "elements-iso": "homotopy colimits of Set-valued diagrams against categories of elements",
    "cocycle": "homotopical calculus of cocycles",
    "right-fractions": "insertion functors are weak homotopy equivalences",
    "r-category/fibration": "the projection from R to weak arrows is a Grothendieck fibration",
    "r-category/fibre": "every strict fibre of R over a weak equivalence is weakly contractible",
    "r-category/fibre-comma": "the fibre of R over w is isomorphic to a comma category of correspondences",
    "reduction": "removing an inner weak equivalence connects a zigzag to its reduction by ladders",
    "special-cocycles": "V-cocycles include into all cocycles by a weak homotopy equivalence",
    "hom": "homotopy hom-sets are the components of V-cocycle categories",
    "hom-composition": "composition of cocycles through pullbacks is well defined on components",
    "replete": "full homotopically replete subcategories inherit the calculus of cocycles",
    "expected": "declared expected failure",
}


class SuiteTask(NamedTuple):
    """A unit of work: rows it produces, and the id used if it aborts."""

    id: str
    anchor: str
    run: Callable[[], List[CheckResult]]


class TheoremSuite:
    """
    Runs all checks on a fixture and assembles a deterministic report.

    Args:
        settings: Caps and sweep parameters (default: active settings)
        exception_class: Exception class to raise on errors (default: FibrantKitError)
    """

    def __init__(
        self,
        settings: Optional[Settings] = None,
        exception_class: Type[Exception] = FibrantKitError,
    ):
        self.settings = settings or get_settings()
        self.exception_class = exception_class
        logger.info("TheoremSuite initialized")

    def run(self, fixture: Fixture) -> Report:
        """
        Run the suite on a fixture.

        Args:
            fixture: A loaded fixture

        Returns:
            The report, rows sorted by check id

        Raises:
            FibrantKitError: If the fixture does not build (validation errors
                pass through unchanged)
        """
        if fixture is None:
            raise ValueError("fixture cannot be None")
        previous = get_settings()
        configure(self.settings)
        try:
            logger.info(f"Starting theorem suite for fixture: {fixture.name}")
            s = fixture.build()
            tasks = self._tasks(s, fixture.expect)
            logger.debug(f"{len(tasks)} tasks on {self.settings.workers} worker(s)")
            if self.settings.workers > 1:
                with ThreadPoolExecutor(max_workers=self.settings.workers) as pool:
                    batches = list(pool.map(self._run_task, tasks))
            else:
                batches = [self._run_task(task) for task in tasks]
            rows = [row for batch in batches for row in batch]
            rows = self._apply_expectations(rows, fixture.expect)
            report = Report(suite=SUITE_NAME, fixture=fixture.name, checks=rows).sorted()
            logger.info(
                f"Suite on {fixture.name} complete: {len(report.checks)} checks, "
                f"{len(report.failures)} failures, worst={self._worst_status(report.checks).value}"
            )
            return report

        except FibrantKitError:
            raise

        except KeyError as e:
            raise self.exception_class(f"Failed to run suite: missing key {e}") from e

        except ValueError as e:
            raise self.exception_class(f"Invalid suite input: {e}") from e

        except Exception as e:
            logger.error(f"Error in theorem suite: {e}", exc_info=True)
            raise self.exception_class(f"Theorem suite failed: {e}") from e

        finally:
            configure(previous)

    def _run_task(self, task: SuiteTask) -> List[CheckResult]:
        start = time.perf_counter()
        try:
            rows = task.run()
        except FibrantKitError as e:
            logger.warning(f"{task.id}: aborted: {e}")
            rows = [CheckResult.error(task.id, task.anchor, e)]
        if self.settings.record_timings:
            ms = int((time.perf_counter() - start) * 1000)
            rows = [row.model_copy(update={"ms": ms}) for row in rows]
        return rows

    def _worst_status(self, rows: List[CheckResult]) -> CheckStatus:
        """Worst row status: failures first, then errors, then consistent, else pass."""
        order = [CheckStatus.FAIL, CheckStatus.REFUTED, CheckStatus.ERROR, CheckStatus.CONSISTENT]
        present = {row.status for row in rows}
        for status in order:
            if status in present:
                return status
        return CheckStatus.PASS

    def _apply_expectations(self, rows: List[CheckResult], expect: Expectations) -> List[CheckResult]:
        """
        Turn declared failures into pass rows, and unexpected passes into fail rows.

        A declared id with no row at all becomes a fail row.
        """
        expected = set(expect.expected_failures())
        if not expected:
            return rows
        out = []
        for row in rows:
            if row.id not in expected or row.status is CheckStatus.ERROR:
                out.append(row)
                continue
            witness = {"expected_failure": True, "observed": row.status.value, **row.witness}
            status = CheckStatus.PASS if row.status.is_failure else CheckStatus.FAIL
            if status is CheckStatus.FAIL:
                logger.warning(f"{row.id} was declared to fail but did not")
            out.append(row.model_copy(update={"status": status, "witness": witness}))
        for check_id in sorted(expected - {row.id for row in rows}):
            logger.warning(f"{check_id} was declared to fail but never ran")
            out.append(CheckResult(id=check_id, anchor=ANCHORS["expected"], status=CheckStatus.FAIL,
                                   witness={"expected_failure": True, "observed": "missing"}))
        return out

    # -- tasks ---------------------------------------------------------------

    def _tasks(self, s: CfoStructure, expect: Expectations) -> List[SuiteTask]:
        settings = self.settings
        T = settings.dim
        C = s.base
        objects = sorted(C.objects, key=order_key)
        pool = sweep_pool(C, settings.sweep_objects)

        tasks = [
            SuiteTask("axiom", ANCHORS["axiom"], lambda: check_cfo_axioms(s).checks),
            SuiteTask("cisinski", ANCHORS["cisinski"], lambda: check_cisinski_axioms(cisinski_from_cfo(s), T=T).checks),
            SuiteTask("sweep", ANCHORS["sweep"], lambda: self._sweeps(pool)),
            SuiteTask("thomason", ANCHORS["thomason"], lambda: thomason_rows(pool, T)),
            SuiteTask("elements-iso", ANCHORS["elements-iso"], lambda: elements_rows(pool, T)),
            SuiteTask("cocycle", ANCHORS["cocycle"], lambda: certify_cocycle_calculus(s, T=T).checks),
            SuiteTask("right-fractions", ANCHORS["right-fractions"], lambda: check_right_fractions(
                s.rel, settings.kmax, settings.lmax, T, settings.check_auxiliary).checks),
            SuiteTask("r-category", ANCHORS["r-category/fibration"], lambda: self._r_category(s)),
        ]
        for Y in objects:
            tasks.append(SuiteTask(f"cisinski-slice/{Y}", ANCHORS["cisinski-slice"],
                                   lambda Y=Y: [self._slice_row(s, Y)]))
        for X in objects:
            for Y in objects:
                key = pair_key(str(X), str(Y))
                tasks.append(SuiteTask(f"reduction/{key}", ANCHORS["reduction"],
                                       lambda X=X, Y=Y: [self._reduction_row(s, X, Y)]))
                tasks.append(SuiteTask(f"special-cocycles/{key}", ANCHORS["special-cocycles"],
                                       lambda X=X, Y=Y: [self._special_cocycles_row(s, X, Y)]))
        for key in sorted(expect.hom_counts):
            tasks.append(SuiteTask(f"hom/{key}", ANCHORS["hom"],
                                   lambda key=key: [self._hom_row(s, key, expect.hom_counts[key])]))
        tasks.append(SuiteTask("hom-composition", ANCHORS["hom-composition"],
                               lambda: self._composition_rows(s, objects)))
        tasks.append(SuiteTask("replete", ANCHORS["replete"], lambda: self._replete_rows(s)))
        return tasks

    def _sweeps(self, pool) -> List[CheckResult]:
        functors = pool_functors(pool)
        cofinal = CofinalityCache(T=self.settings.dim)
        sweeps = [
            ("sweep/fibration-cofinality", lambda: sweep_fibration_cofinality(functors, cofinal)),
            ("sweep/cofinal-fully-faithful", lambda: sweep_cofinal_fully_faithful(functors, cofinal)),
            ("sweep/quillen-a", lambda: sweep_quillen_a(functors, cofinal)),
            ("sweep/adjoint-pullback", lambda: sweep_adjoint_pullback(functors)),
        ]
        rows = []
        for check_id, sweep in sweeps:
            try:
                rows.append(sweep())
            except FibrantKitError as e:
                logger.warning(f"{check_id}: {e}")
                rows.append(CheckResult.error(check_id, ANCHORS["sweep"], e))
        return rows

    def _slice_row(self, s: CfoStructure, Y) -> CheckResult:
        report = check_cisinski_axioms(slice_structure(s, Y), replacement=False)
        problem = None
        if report.failures:
            first = report.failures[0]
            problem = {"failed": [row.id for row in report.failures], "first": first.witness}
        return CheckResult.exact(f"cisinski-slice/{Y}", ANCHORS["cisinski-slice"], problem)

    def _r_category(self, s: CfoStructure) -> List[CheckResult]:
        C = s.base
        R, P = build_R(s)
        fibration = is_grothendieck_fibration(P)
        problem = None
        if not fibration:
            g, e = fibration.counterexample
            problem = {"no_cartesian_lift": str(g), "at": str(e)}
        rows = [CheckResult.exact("r-category/fibration", ANCHORS["r-category/fibration"], problem)]
        weak = sorted((w for w in C.morphisms if s.is_weq(w)), key=order_key)
        for w in weak:
            fibre_id = f"r-category/fibre/{w}"
            verdict = is_weakly_contractible(strict_fibre(P, weak_arrow(C, w)), T=self.settings.dim)
            rows.append(CheckResult.of_verdict(fibre_id, ANCHORS["r-category/fibre"], verdict))
            comma_id = f"r-category/fibre-comma/{w}"
            try:
                R_fibre_comma_isomorphism(s, w)
                rows.append(CheckResult.exact(comma_id, ANCHORS["r-category/fibre-comma"], None))
            except SizeCapExceeded as e:
                rows.append(CheckResult.error(comma_id, ANCHORS["r-category/fibre-comma"], e))
            except FibrantKitError as e:
                rows.append(CheckResult.exact(comma_id, ANCHORS["r-category/fibre-comma"], {"error": str(e)}))
        logger.debug(f"R({s.name}): {len(R.objects)} objects, {len(weak)} fibres checked")
        return rows

    def _reduction_row(self, s: CfoStructure, X, Y) -> CheckResult:
        """
        Reduce every [-1;1;-1;1] zigzag from X to Y, and every round trip with an
        inserted identity, checking each returned ladder.

        Zigzags whose inner weak equivalence has no special factorization with
        left leg in V are counted as skipped.
        """
        check_id = f"reduction/{pair_key(str(X), str(Y))}"
        anchor = ANCHORS["reduction"]
        round_trips = enumerate_zigzags(s.rel, ROUND_TRIP.directions(), X, Y)
        cases = [(insert_identity(s.base, z0, 2), z0) for z0 in round_trips]
        inserted = {z for z, _ in cases}
        cases.extend((z, None) for z in enumerate_zigzags(s.rel, SPLIT.directions(), X, Y) if z not in inserted)
        skipped = 0
        for z, z0 in cases:
            try:
                reduction = reduce_zigzag(s, z)
            except ValueError:
                skipped += 1
                continue
            problems = verify_reduction(s, z, reduction)
            if z0 is not None and reduction.original != z0:
                problems.append("original zigzag differs from the input")
            if problems:
                return CheckResult.exact(check_id, anchor, {"zigzag": str(z), "problems": problems})
        return CheckResult(id=check_id, anchor=anchor, status=CheckStatus.PASS,
                           witness={"zigzags": len(cases), "skipped": skipped})

    def _special_cocycles_row(self, s: CfoStructure, X, Y) -> CheckResult:
        special = cocycle_category(s, s.V, X, Y)
        every = cocycle_category(s, s.rel.weq, X, Y)
        verdict = weak_equivalence_evidence(inclusion_functor(special, every), T=self.settings.dim)
        return CheckResult.of_verdict(f"special-cocycles/{pair_key(str(X), str(Y))}",
                                      ANCHORS["special-cocycles"], verdict)

    def _hom_row(self, s: CfoStructure, key: str, expected: int) -> CheckResult:
        X, Y = split_pair(key)
        found = homotopy_hom(s, X, Y).size
        row = CheckResult.exact(f"hom/{key}", ANCHORS["hom"],
                                None if found == expected else {"expected": expected, "found": found})
        if row.status is CheckStatus.PASS:
            row = row.model_copy(update={"witness": {"size": found}})
        return row

    def _composition_rows(self, s: CfoStructure, objects) -> List[CheckResult]:
        rows = []
        for X in objects:
            for Y in objects:
                for W in objects:
                    check_id = f"hom-composition/{X},{Y},{W}"
                    try:
                        composition = homotopy_hom_composition(s, X, Y, W)
                    except FibrantKitError as e:
                        rows.append(CheckResult.error(check_id, ANCHORS["hom-composition"], e))
                        continue
                    problem = {"conflicts": composition.conflicts[:3]} if composition.conflicts else None
                    rows.append(CheckResult.exact(check_id, ANCHORS["hom-composition"], problem))
        return rows

    def _replete_rows(self, s: CfoStructure) -> List[CheckResult]:
        """Run the calculus on every proper weak-equivalence class."""
        rows = []
        classes = s.rel.weq_category().components()
        for members in classes:
            if len(members) == len(s.base.objects):
                continue
            label = str(min(members, key=order_key))
            problem = None if is_homotopically_replete(s, members) else {"objects": [str(x) for x in members]}
            rows.append(CheckResult.exact(f"replete/{label}", ANCHORS["replete"], problem))
            rows.extend(certify_cocycle_calculus(s, T=self.settings.dim, objects=members,
                                                 prefix=f"replete/{label}").checks)
        return rows


def run_suite(fixture: Fixture, settings: Optional[Settings] = None) -> Report:
    """Run the theorem suite on a fixture with the given (or active) settings."""
    return TheoremSuite(settings).run(fixture)
