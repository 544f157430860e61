"""Grading quiver of the principal-parts bundle on P^1 x P^1 and its stability scan."""

from src.quiver.scan import (
    QuiverReport,
    ScanReport,
    SlopeConvention,
    quiver_report,
    semistability_scan,
)
from src.quiver.support import (
    QuiverSupport,
    SlopeRecord,
    Subrep,
    boundary,
    build_support,
    count_order_ideals,
    enumerate_subreps,
    king_slope,
    subrep_from_boundary,
)

__all__ = [
    "QuiverReport",
    "QuiverSupport",
    "ScanReport",
    "SlopeConvention",
    "SlopeRecord",
    "Subrep",
    "boundary",
    "build_support",
    "count_order_ideals",
    "enumerate_subreps",
    "king_slope",
    "quiver_report",
    "semistability_scan",
    "subrep_from_boundary",
]
