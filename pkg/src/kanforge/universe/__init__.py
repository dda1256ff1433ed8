from kanforge.universe.classifier import (
    CERTIFIED,
    FAILED,
    UNCHECKED,
    ClassifyingMap,
    UniverseSimplex,
    classify,
    in_U,
    membership_report,
    reconstruct,
    simplex_of,
    universe_apply,
)
from kanforge.universe.enumerate import small_fibrations
from kanforge.universe.horn import extend_horn_in_U, horn_of
from kanforge.universe.wom import (
    CanonicalWOM,
    WellOrderedMorphism,
    canonicalize,
    check_cap,
    order_preserving_iso,
    pullback_wom,
    relabelling,
    well_order,
)

__all__ = [
    "CERTIFIED",
    "FAILED",
    "UNCHECKED",
    "CanonicalWOM",
    "ClassifyingMap",
    "UniverseSimplex",
    "WellOrderedMorphism",
    "canonicalize",
    "check_cap",
    "classify",
    "extend_horn_in_U",
    "horn_of",
    "in_U",
    "membership_report",
    "order_preserving_iso",
    "pullback_wom",
    "reconstruct",
    "relabelling",
    "simplex_of",
    "small_fibrations",
    "universe_apply",
    "well_order",
]
