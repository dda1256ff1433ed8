from kanforge.sscore.generators import (
    boundary,
    codiscrete,
    discrete,
    empty,
    generated_subcomplex,
    horn,
    monotone_maps,
    nerve,
    point,
    retruncate,
    standard_simplex,
    subcomplex,
    subcomplex_generator,
)
from kanforge.sscore.limits import coproduct, pairing, product, product_map, pullback, terminal_map
from kanforge.sscore.maps import enumerate_maps, operator_map, yoneda
from kanforge.sscore.search import SearchStats, extensions, first_extension
from kanforge.sscore.simplicial import (
    Simplex,
    SimplicialMap,
    SimplicialSet,
    Violation,
    compose,
    ez_decompose,
    identity,
    map_from_function,
    validate,
)

__all__ = [
    "SearchStats",
    "Simplex",
    "SimplicialMap",
    "SimplicialSet",
    "Violation",
    "boundary",
    "codiscrete",
    "compose",
    "coproduct",
    "discrete",
    "empty",
    "enumerate_maps",
    "extensions",
    "ez_decompose",
    "first_extension",
    "generated_subcomplex",
    "horn",
    "identity",
    "map_from_function",
    "monotone_maps",
    "nerve",
    "operator_map",
    "pairing",
    "point",
    "product",
    "product_map",
    "pullback",
    "retruncate",
    "standard_simplex",
    "subcomplex",
    "subcomplex_generator",
    "terminal_map",
    "validate",
    "yoneda",
]
