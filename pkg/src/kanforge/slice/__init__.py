from kanforge.slice.hom import HomObject, internal_hom
from kanforge.slice.objects import (
    SliceMap,
    SliceObject,
    is_pullback_square,
    over_itself,
    pullback_along,
    pullback_map,
    pullback_to_total,
    slice_identity,
)
from kanforge.slice.pushforward import (
    CounitIso,
    JoyalExtension,
    Pushforward,
    counit_iso,
    fiber_bound,
    joyal_extend,
    pushforward,
    pushforward_map,
    restriction_domain,
    unit_map,
)

__all__ = [
    "CounitIso",
    "HomObject",
    "JoyalExtension",
    "Pushforward",
    "SliceMap",
    "SliceObject",
    "counit_iso",
    "fiber_bound",
    "internal_hom",
    "is_pullback_square",
    "joyal_extend",
    "over_itself",
    "pullback_along",
    "pullback_map",
    "pullback_to_total",
    "pushforward",
    "pushforward_map",
    "restriction_domain",
    "slice_identity",
    "unit_map",
]
