"""
Result records shared across modules.

Verdicts, homology profiles and theorem-suite reports are pydantic models so
they validate on construction and serialize deterministically.
"""

from enum import Enum
from typing import Any, Dict, Iterable, List, Optional

from pydantic import BaseModel, Field


class VerdictStatus(str, Enum):
    """Three-valued homotopy evidence."""
    CERTIFIED = "certified"
    CONSISTENT = "consistent"
    REFUTED = "refuted"


# Worst first: a refutation outranks missing evidence, which outranks a certificate.
_SEVERITY = {
    VerdictStatus.REFUTED: 2,
    VerdictStatus.CONSISTENT: 1,
    VerdictStatus.CERTIFIED: 0,
}


class Verdict(BaseModel):
    """
    Outcome of a weak-equivalence or contractibility check.

    Refuted verdicts carry the discrepancy (pi_0 or homology) in the witness;
    Certified verdicts carry the structural certificate that was found.
    """

    model_config = {"frozen": True}

    status: VerdictStatus
    witness: Dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def certified(cls, **witness: Any) -> "Verdict":
        return cls(status=VerdictStatus.CERTIFIED, witness=witness)

    @classmethod
    def consistent(cls, **witness: Any) -> "Verdict":
        return cls(status=VerdictStatus.CONSISTENT, witness=witness)

    @classmethod
    def refuted(cls, **witness: Any) -> "Verdict":
        return cls(status=VerdictStatus.REFUTED, witness=witness)

    @property
    def is_certified(self) -> bool:
        return self.status is VerdictStatus.CERTIFIED

    @property
    def is_refuted(self) -> bool:
        return self.status is VerdictStatus.REFUTED


def aggregate_verdicts(verdicts: Iterable[Verdict]) -> Verdict:
    """
    Combine verdicts: Refuted dominates, then Consistent, else Certified.

    The witness of the aggregate is the witness of the first verdict (in the
    given order) of the winning status, plus the instance counts.

    Args:
        verdicts: Verdicts to combine (may be empty: vacuously Certified)

    Returns:
        The aggregate verdict
    """
    worst = VerdictStatus.CERTIFIED
    first: Dict[VerdictStatus, Verdict] = {}
    counts = {status.value: 0 for status in VerdictStatus}
    for verdict in verdicts:
        counts[verdict.status.value] += 1
        first.setdefault(verdict.status, verdict)
        if _SEVERITY[verdict.status] > _SEVERITY[worst]:
            worst = verdict.status
    witness: Dict[str, Any] = {"counts": counts}
    if worst in first:
        witness["first"] = first[worst].witness
    return Verdict(status=worst, witness=witness)


class HomologyGroup(BaseModel):
    """A finitely generated abelian group Z^r + Z/t1 + ... + Z/tk."""

    model_config = {"frozen": True}

    free_rank: int = 0
    torsion: List[int] = Field(default_factory=list)

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


class HomologyProfile(BaseModel):
    """Integral homology H_0 .. H_{T-1} of a truncated simplicial set."""

    model_config = {"frozen": True}

    dim: int
    groups: List[HomologyGroup]

    @property
    def components(self) -> int:
        """Number of path components (free rank of H_0)."""
        return self.groups[0].free_rank if self.groups else 0

    @property
    def is_acyclic(self) -> bool:
        """True iff the reduced homology vanishes through degree T-1."""
        if not self.groups:
            return True
        head = self.groups[0]
        return (
            head.free_rank == 1
            and not head.torsion
            and all(g.is_zero for g in self.groups[1:])
        )

    def first_difference(self, other: "HomologyProfile") -> Dict[str, Any]:
        """Return the lowest degree where the two profiles differ, or {}."""
        for n, (a, b) in enumerate(zip(self.groups, other.groups)):
            if a != b:
                return {"degree": n, "source": str(a), "target": str(b)}
        return {}

    def __str__(self) -> str:
        return ", ".join(f"H{n}={g}" for n, g in enumerate(self.groups))


class CheckStatus(str, Enum):
    """Row status in a theorem-suite report."""
    PASS = "pass"
    FAIL = "fail"
    CERTIFIED = "certified"
    CONSISTENT = "consistent"
    REFUTED = "refuted"
    ERROR = "error"

    @classmethod
    def from_verdict(cls, verdict: Verdict) -> "CheckStatus":
        return cls(verdict.status.value)

    @property
    def is_failure(self) -> bool:
        return self in (CheckStatus.FAIL, CheckStatus.REFUTED)


class CheckResult(BaseModel):
    """One row of a report."""

    id: str
    anchor: str
    status: CheckStatus
    witness: Dict[str, Any] = Field(default_factory=dict)
    ms: int = 0

    @classmethod
    def exact(cls, id: str, anchor: str, problem: Optional[Dict[str, Any]]) -> "CheckResult":
        """A pass row when problem is None, else a fail row carrying it."""
        if problem is None:
            return cls(id=id, anchor=anchor, status=CheckStatus.PASS)
        return cls(id=id, anchor=anchor, status=CheckStatus.FAIL, witness=problem)

    @classmethod
    def of_verdict(cls, id: str, anchor: str, verdict: Verdict) -> "CheckResult":
        return cls(id=id, anchor=anchor, status=CheckStatus.from_verdict(verdict), witness=verdict.witness)

    @classmethod
    def error(cls, id: str, anchor: str, exc: Exception) -> "CheckResult":
        return cls(
            id=id, anchor=anchor, status=CheckStatus.ERROR,
            witness={"error": type(exc).__name__, "message": str(exc)},
        )


class Report(BaseModel):
    """A suite run over one fixture, rows sorted by check id."""

    suite: str
    fixture: str
    checks: List[CheckResult] = Field(default_factory=list)

    def sorted(self) -> "Report":
        return self.model_copy(update={"checks": sorted(self.checks, key=lambda c: c.id)})

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if c.status.is_failure]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> str:
        return self.model_dump_json(indent=2) + "\n"

    def to_text(self) -> str:
        """Stable fixed-width rendering, one check per line."""
        width = max([len(c.id) for c in self.checks] + [5])
        lines = [f"suite: {self.suite}", f"fixture: {self.fixture}", ""]
        lines.append(f"{'check'.ljust(width)}  {'status'.ljust(10)}  anchor")
        for check in self.checks:
            lines.append(
                f"{check.id.ljust(width)}  {check.status.value.ljust(10)}  {check.anchor}"
            )
        lines.append("")
        lines.append(
            f"{len(self.checks)} checks, {len(self.failures)} failures"
        )
        return "\n".join(lines) + "\n"
