from kanforge.univalence.eq import (
    NOT_UNIVALENT,
    UNIVALENT,
    EqObject,
    UnivalenceVerdict,
    delta_as_slice_map,
    eq_object,
    eq_self,
    is_univalent,
)
from kanforge.univalence.lift import UnivalentLift, univalent_lift
from kanforge.univalence.pp import (
    ContractibilityReport,
    FamilySpace,
    PathSpace,
    PPElement,
    PPLevel,
    check_pp_contractible,
    evaluation,
    family_space,
    path_space,
    pp_level,
)

__all__ = [
    "NOT_UNIVALENT",
    "UNIVALENT",
    "ContractibilityReport",
    "EqObject",
    "FamilySpace",
    "PPElement",
    "PPLevel",
    "PathSpace",
    "UnivalenceVerdict",
    "UnivalentLift",
    "check_pp_contractible",
    "delta_as_slice_map",
    "eq_object",
    "eq_self",
    "evaluation",
    "family_space",
    "is_univalent",
    "path_space",
    "pp_level",
    "univalent_lift",
]
