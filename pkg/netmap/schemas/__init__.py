"""
Schemas module for portrait documents, run configuration and reports
"""

from netmap.schemas.portrait import (
    PostcriticalEntry,
    ExtraCriticalEntry,
    PortraitDocument,
    ChoicePolicy
)

from netmap.schemas.run_config import RunConfig

from netmap.schemas.reports import (
    Report,
    ElementaryDivisorsReport,
    SmithFormReport,
    IndexBoundReport,
    HurwitzInvariantReport,
    HurwitzEqualReport,
    WitnessReport,
    HurwitzClassesReport,
    HurwitzCountReport,
    DeckGroupReport,
    AffineMapReport,
    LiftabilityReport,
    VMEReport,
    PortraitReport,
    PresentationReport,
    RealizabilityReport,
    PortraitCountReport
)

__all__ = [
    "PostcriticalEntry",
    "ExtraCriticalEntry",
    "PortraitDocument",
    "ChoicePolicy",
    "RunConfig",
    "Report",
    "ElementaryDivisorsReport",
    "SmithFormReport",
    "IndexBoundReport",
    "HurwitzInvariantReport",
    "HurwitzEqualReport",
    "WitnessReport",
    "HurwitzClassesReport",
    "HurwitzCountReport",
    "DeckGroupReport",
    "AffineMapReport",
    "LiftabilityReport",
    "VMEReport",
    "PortraitReport",
    "PresentationReport",
    "RealizabilityReport",
    "PortraitCountReport",
]
