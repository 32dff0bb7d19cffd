"""
Property sweeps over small categories.

Each sweep enumerates functors between the categories of a pool and checks
that three-valued verdicts never contradict a known statement: no instance
may have one side Certified and the other Refuted. Thomason and
category-of-elements rows run on Cat-valued diagrams derived from the pool.
"""

import itertools
import logging
from typing import Dict, List, Optional, Tuple

from fibrantkit.exceptions import FibrantKitError
from fibrantkit.fincat import (
    CatDiagram,
    FinCategory,
    Functor,
    arrow_category,
    codiscrete_category,
    compose_functors,
    constant_diagram,
    coslice_diagram,
    discrete_category,
    enumerate_functors,
    find_right_adjoint,
    is_grothendieck_fibration,
    pullback_category,
    representable_diagram,
    terminal_category,
)
from fibrantkit.groupoids import FunctorKey, functor_key
from fibrantkit.homotopy import fibre_verdicts, is_homotopy_cofinal, weak_equivalence_evidence
from fibrantkit.models import CheckResult, CheckStatus, Verdict, VerdictStatus
from fibrantkit.simplicial import elements_isomorphism, thomason_comparison

logger = logging.getLogger(__name__)

FUNCTORS_PER_PAIR = 64

SWEEP_ANCHORS = {
    "fibration-cofinality": "a Grothendieck fibration has weakly contractible fibres iff it is homotopy cofinal",
    "cofinal-fully-faithful": "if G∘F is homotopy cofinal and G is fully faithful then F is homotopy cofinal",
    "quillen-a": "homotopy cofinal functors are weak homotopy equivalences",
    "adjoint-pullback": "the pullback of a left adjoint along a Grothendieck fibration is a left adjoint",
}
THOMASON_ANCHOR = "the comparison from the homotopy colimit of nerves to the nerve of the oplax colimit is a weak equivalence"
ELEMENTS_ANCHOR = "the homotopy colimit of a Set-valued diagram is isomorphic to the nerve of its category of elements"


def sweep_pool(base: Optional[FinCategory], max_objects: int) -> List[FinCategory]:
    """
    Small categories to sweep: the fixture base when it is small enough, then
    the point, [1], the codiscrete and the discrete category on two objects.
    """
    pool = []
    if base is not None and len(base.objects) <= max_objects and len(base.morphisms) <= max_objects ** 2:
        pool.append(base)
    pool.extend([
        terminal_category("1"),
        arrow_category("[1]"),
        codiscrete_category(["0", "1"], name="I"),
        discrete_category(["0", "1"], name="2"),
    ])
    return pool


def pool_functors(pool: List[FinCategory], limit: int = FUNCTORS_PER_PAIR) -> List[Functor]:
    """At most limit functors for every ordered pair of pool categories."""
    functors = []
    for A in pool:
        for B in pool:
            functors.extend(itertools.islice(enumerate_functors(A, B), limit))
    logger.debug(f"Sweep pool: {len(pool)} categories, {len(functors)} functors")
    return functors


def _contradicts(a: Verdict, b: Verdict) -> bool:
    return {a.status, b.status} == {VerdictStatus.CERTIFIED, VerdictStatus.REFUTED}


def _describe(F: Functor) -> str:
    return f"{F.source.name}->{F.target.name} {sorted(F.object_map.items(), key=repr)}"


def _row(name: str, instances: int, contradiction: Optional[Dict]) -> CheckResult:
    check_id = f"sweep/{name}"
    if contradiction is not None:
        logger.warning(f"{check_id}: contradiction {contradiction}")
        return CheckResult(id=check_id, anchor=SWEEP_ANCHORS[name], status=CheckStatus.FAIL,
                           witness={"instances": instances, "contradiction": contradiction})
    return CheckResult(id=check_id, anchor=SWEEP_ANCHORS[name], status=CheckStatus.PASS,
                       witness={"instances": instances})


class CofinalityCache:
    """Memoized is_homotopy_cofinal, keyed by the functor's categories and maps."""

    def __init__(self, T: Optional[int] = None, cap: Optional[int] = None):
        self.T = T
        self.cap = cap
        self._verdicts: Dict[Tuple[int, int, FunctorKey], Verdict] = {}

    def __call__(self, F: Functor) -> Verdict:
        key = (id(F.source), id(F.target), functor_key(F))
        if key not in self._verdicts:
            self._verdicts[key] = is_homotopy_cofinal(F, T=self.T, cap=self.cap)
        return self._verdicts[key]


def sweep_fibration_cofinality(functors: List[Functor], cofinal: CofinalityCache) -> CheckResult:
    instances = 0
    for F in functors:
        if not is_grothendieck_fibration(F):
            continue
        instances += 1
        fibres = fibre_verdicts(F, T=cofinal.T, cap=cofinal.cap)
        verdict = cofinal(F)
        if _contradicts(fibres, verdict):
            return _row("fibration-cofinality", instances, {
                "functor": _describe(F), "fibres": fibres.status.value, "cofinal": verdict.status.value,
            })
    return _row("fibration-cofinality", instances, None)


def sweep_cofinal_fully_faithful(functors: List[Functor], cofinal: CofinalityCache) -> CheckResult:
    """For F: A -> B and fully faithful G: B -> C, G∘F cofinal must not meet F refuted."""
    fully_faithful = [G for G in functors if G.is_fully_faithful()]
    instances = 0
    for F in functors:
        for G in fully_faithful:
            if G.source is not F.target:
                continue
            instances += 1
            outer = cofinal(compose_functors(G, F))
            if outer.is_certified and cofinal(F).is_refuted:
                return _row("cofinal-fully-faithful", instances, {
                    "F": _describe(F), "G": _describe(G),
                })
    return _row("cofinal-fully-faithful", instances, None)


def sweep_quillen_a(functors: List[Functor], cofinal: CofinalityCache) -> CheckResult:
    instances = 0
    for F in functors:
        if not cofinal(F).is_certified:
            continue
        instances += 1
        evidence = weak_equivalence_evidence(F, T=cofinal.T, cap=cofinal.cap)
        if evidence.is_refuted:
            return _row("quillen-a", instances, {"functor": _describe(F), "evidence": evidence.witness})
    return _row("quillen-a", instances, None)


def sweep_adjoint_pullback(functors: List[Functor], cap: Optional[int] = None) -> CheckResult:
    """For F: B' -> B with a right adjoint and a fibration P: E -> B, B' ×_B E -> E has one too."""
    left_adjoints = [F for F in functors if find_right_adjoint(F, cap=cap) is not None]
    fibrations = [P for P in functors if is_grothendieck_fibration(P)]
    instances = 0
    for F in left_adjoints:
        for P in fibrations:
            if P.target is not F.target:
                continue
            instances += 1
            _, _, L = pullback_category(F, P, cap=cap)
            if L.source.objects and find_right_adjoint(L, cap=cap) is None:
                return _row("adjoint-pullback", instances, {"F": _describe(F), "P": _describe(P)})
    return _row("adjoint-pullback", instances, None)


def derived_diagrams(C: FinCategory, cap: Optional[int] = None) -> List[CatDiagram]:
    """Cat-valued diagrams on C: every representable, the coslices, and constant [1]."""
    diagrams = [representable_diagram(C, d) for d in C.objects]
    diagrams.append(coslice_diagram(C, cap=cap))
    diagrams.append(constant_diagram(C, arrow_category("[1]")))
    return diagrams


def thomason_rows(pool: List[FinCategory], T: Optional[int] = None, cap: Optional[int] = None) -> List[CheckResult]:
    """One verdict row per derived diagram; package errors become error rows."""
    rows = []
    for C in pool:
        for X in derived_diagrams(C, cap=cap):
            check_id = f"thomason/{C.name}/{X.name}"
            try:
                verdict = weak_equivalence_evidence(thomason_comparison(X, T, cap=cap), T=T, cap=cap)
            except FibrantKitError as e:
                logger.warning(f"{check_id}: {e}")
                rows.append(CheckResult.error(check_id, THOMASON_ANCHOR, e))
                continue
            rows.append(CheckResult.of_verdict(check_id, THOMASON_ANCHOR, verdict))
    return rows


def elements_rows(pool: List[FinCategory], T: Optional[int] = None, cap: Optional[int] = None) -> List[CheckResult]:
    """For each representable, the explicit map must be a simplicial isomorphism."""
    rows = []
    for C in pool:
        for d in C.objects:
            check_id = f"elements-iso/{C.name}/{d}"
            try:
                iso = elements_isomorphism(representable_diagram(C, d), T, cap=cap)
            except FibrantKitError as e:
                logger.warning(f"{check_id}: {e}")
                rows.append(CheckResult.error(check_id, ELEMENTS_ANCHOR, e))
                continue
            problem = None
            violations = iso.violations()
            if violations or not iso.is_isomorphism():
                problem = {"diagram": f"y({d})", "violations": violations[:1]}
            rows.append(CheckResult.exact(check_id, ELEMENTS_ANCHOR, problem))
    return rows
