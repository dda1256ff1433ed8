from kanforge.lifting.problem import (
    Exhausted,
    Filler,
    LiftingProblem,
    Outcome,
    Refuted,
    solve_lifting,
    verify_filler,
)
from kanforge.lifting.rlp import (
    RlpReport,
    SquareFailure,
    boundary_generators,
    check_rlp,
    horn_generators,
    is_fibration,
    is_kan,
    is_trivial_fibration,
)

__all__ = [
    "Exhausted",
    "Filler",
    "LiftingProblem",
    "Outcome",
    "Refuted",
    "RlpReport",
    "SquareFailure",
    "boundary_generators",
    "check_rlp",
    "horn_generators",
    "is_fibration",
    "is_kan",
    "is_trivial_fibration",
    "solve_lifting",
    "verify_filler",
]
