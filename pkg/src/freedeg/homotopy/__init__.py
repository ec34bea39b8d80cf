"""Chain-level and presentation-level invariants."""

from freedeg.homotopy.chains import (
    ChainComplex,
    HomologyGroup,
    homology,
    normalized_chains,
)
from freedeg.homotopy.groups import (
    ConnectivityError,
    GroupPresentation,
    GroupVerdict,
    analyze_group,
    is_trivial_group,
    pi1_presentation,
)
from freedeg.homotopy.probe import ContractibilityReport, contractibility_probe
from freedeg.homotopy.snf import smith_normal_form

__all__ = [
    "ChainComplex",
    "ConnectivityError",
    "ContractibilityReport",
    "GroupPresentation",
    "GroupVerdict",
    "HomologyGroup",
    "analyze_group",
    "contractibility_probe",
    "homology",
    "is_trivial_group",
    "normalized_chains",
    "pi1_presentation",
    "smith_normal_form",
]
