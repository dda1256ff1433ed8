"""Bounded, certificate-producing computations with simplicial sets, Kan
fibrations and a lazily represented universe of well-ordered fibrations."""

from kanforge.config import Config
from kanforge.errors import (
    BudgetExhausted,
    CapExceeded,
    InputError,
    InternalError,
    KanforgeError,
    Uncertified,
)

__all__ = [
    "BudgetExhausted",
    "CapExceeded",
    "Config",
    "InputError",
    "InternalError",
    "KanforgeError",
    "Uncertified",
]
