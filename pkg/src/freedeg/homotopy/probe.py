"""Degree-bounded contractibility evidence for a simplicial set."""

from __future__ import annotations

from dataclasses import dataclass, field

from freedeg.homotopy.chains import HomologyGroup, homology, normalized_chains
from freedeg.homotopy.groups import DEFAULT_BUDGET, GroupVerdict, analyze_group, pi1_presentation
from freedeg.sset import SimplicialSet, is_connected

CAVEAT = (
    "passing is necessary but not sufficient for contractibility: only homology up to "
    "the stated degree and a budgeted fundamental-group test were computed"
)


@dataclass
class ContractibilityReport:
    max_deg: int
    connected: bool
    homology: list[HomologyGroup] = field(default_factory=list)
    pi1: GroupVerdict | None = None
    pi1_steps: list[str] = field(default_factory=list)

    @property
    def reduced_homology_vanishes(self) -> bool:
        return bool(self.homology) and self.homology[0] == HomologyGroup(1) and all(
            g.is_zero for g in self.homology[1:]
        )

    @property
    def passed(self) -> bool:
        return self.connected and self.reduced_homology_vanishes and self.pi1 == GroupVerdict.TRIVIAL

    @property
    def verdict(self) -> str:
        if self.passed:
            return f"contractible up to degree {self.max_deg}"
        if self.connected and self.reduced_homology_vanishes and self.pi1 == GroupVerdict.UNKNOWN:
            return f"inconclusive up to degree {self.max_deg} (pi1 budget exhausted)"
        return f"not contractible (checked up to degree {self.max_deg})"

    def as_dict(self) -> dict:
        return {
            "connected": self.connected,
            "homology": {str(n): g.as_dict() for n, g in enumerate(self.homology)},
            "pi1": self.pi1.value if self.pi1 else None,
            "pi1_steps": self.pi1_steps,
            "verdict": self.verdict,
            "passed": self.passed,
            "caveat": CAVEAT,
        }


def contractibility_probe(
    X: SimplicialSet, max_deg: int, budget: int = DEFAULT_BUDGET, basepoint: int = 0
) -> ContractibilityReport:
    connected = is_connected(X)
    report = ContractibilityReport(max_deg, connected)
    report.homology = homology(normalized_chains(X), max_deg)
    if connected:
        analysis = analyze_group(pi1_presentation(X, basepoint), budget)
        report.pi1 = analysis.verdict
        report.pi1_steps = analysis.steps
    return report
