from __future__ import annotations

from dataclasses import asdict, dataclass

from kanforge.errors import InputError


@dataclass(frozen=True)
class Config:
    """Bounds shared by every bounded construction and check.

    ``max_dim`` truncates all stored simplicial sets; ``fiber_cap`` plays the
    role of the size bound on fibers; ``search_budget`` caps the number of
    nodes a single backtracking search may visit.
    """

    max_dim: int = 3
    fiber_cap: int = 3
    search_budget: int = 10**6
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.max_dim < 1:
            raise InputError(f"max_dim must be >= 1, got {self.max_dim}")
        if self.fiber_cap < 1:
            raise InputError(f"fiber_cap must be >= 1, got {self.fiber_cap}")
        if self.search_budget < 1:
            raise InputError("search_budget must be positive")
        if self.rng_seed < 0:
            raise InputError("rng_seed must be a natural number")

    def to_dict(self) -> dict[str, int]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> Config:
        unknown = set(data) - {"max_dim", "fiber_cap", "search_budget", "rng_seed"}
        if unknown:
            raise InputError(f"unknown config fields: {sorted(unknown)}")
        return cls(**{k: int(v) for k, v in data.items()})

    def replace(self, **changes: int) -> Config:
        return Config(**{**self.to_dict(), **changes})
