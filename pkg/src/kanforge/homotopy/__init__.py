from kanforge.homotopy.minimal import (
    MinimalFactorization,
    MinimalityWitness,
    Trivialization,
    homotopic_rel_boundary,
    minimal_trivialize,
    quillen_factorize,
    recheck_minimality,
)
from kanforge.homotopy.retraction import (
    DeformationRetraction,
    Homotopy,
    constant_homotopy,
    cylinder,
    end_inclusion,
    find_deformation_retraction,
    verify_deformation_retraction,
)
from kanforge.homotopy.weq import (
    NO,
    UNKNOWN,
    YES,
    CaseAnalysis,
    Pi0Obstruction,
    WeqVerdict,
    factor_weq,
    fiber_map,
    is_weq,
    mapping_cylinder,
    pi0,
    pi0_obstruction,
)

__all__ = [
    "NO",
    "UNKNOWN",
    "YES",
    "CaseAnalysis",
    "DeformationRetraction",
    "Homotopy",
    "MinimalFactorization",
    "MinimalityWitness",
    "Pi0Obstruction",
    "Trivialization",
    "WeqVerdict",
    "constant_homotopy",
    "cylinder",
    "end_inclusion",
    "factor_weq",
    "fiber_map",
    "find_deformation_retraction",
    "homotopic_rel_boundary",
    "is_weq",
    "mapping_cylinder",
    "minimal_trivialize",
    "pi0",
    "pi0_obstruction",
    "quillen_factorize",
    "recheck_minimality",
    "verify_deformation_retraction",
]
