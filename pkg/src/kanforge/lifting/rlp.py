"""Bounded right-lifting-property checks: fibrations, trivial fibrations, Kan complexes."""

from __future__ import annotations

from dataclasses import dataclass, field

from kanforge.config import Config
from kanforge.errors import BudgetExhausted
from kanforge.lifting.problem import Filler, LiftingProblem, Refuted, solve_lifting
from kanforge.sscore import (
    SimplicialMap,
    SimplicialSet,
    boundary,
    compose,
    extensions,
    horn,
    terminal_map,
    yoneda,
)


@dataclass(frozen=True)
class SquareFailure:
    generator: tuple
    bottom: int
    top: tuple[tuple[int, ...], ...]
    nodes: int

    def to_dict(self) -> dict:
        return {
            "generator": list(self.generator),
            "bottom": self.bottom,
            "top": [list(c) for c in self.top],
            "nodes": self.nodes,
        }


@dataclass(frozen=True)
class RlpReport:
    """Outcome of a bounded lifting check.

    Empty ``failures`` and ``unknown`` means every tested square up to
    ``verified_dim`` had a filler; it never claims anything above that bound.
    """

    verified_dim: int
    generators: tuple[tuple, ...]
    squares: int
    failures: tuple[SquareFailure, ...] = ()
    unknown: tuple[tuple, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.failures and not self.unknown

    @property
    def status(self) -> str:
        if self.failures:
            return "failed"
        if self.unknown:
            return "unknown"
        return "certified"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "verified_dim": self.verified_dim,
            "generators": [list(g) for g in self.generators],
            "squares": self.squares,
            "failures": [f.to_dict() for f in self.failures],
            "unknown": [list(u) for u in self.unknown],
        }

    def __str__(self) -> str:
        if self.ok:
            return f"certified up to dimension {self.verified_dim} ({self.squares} squares)"
        if self.failures:
            f = self.failures[0]
            return f"fails at {f.generator} over bottom simplex {f.bottom}"
        return f"unknown: budget exhausted at {self.unknown[0]}"


def horn_generators(max_dim: int) -> list[tuple]:
    return [("horn", n, k) for n in range(1, max_dim + 1) for k in range(n + 1)]


def boundary_generators(max_dim: int) -> list[tuple]:
    return [("boundary", n) for n in range(max_dim + 1)]


def _generator(kind: tuple, bound: int) -> SimplicialMap:
    if kind[0] == "horn":
        return horn(kind[1], kind[2], bound)[1]
    return boundary(kind[1], bound)[1]


def check_rlp(
    p: SimplicialMap, generators: list[tuple], cfg: Config, up_to: int | None = None
) -> RlpReport:
    """Test ``p`` against every square over each generator inclusion.

    Squares are enumerated by bottom simplex and then by every top map over
    it (the commuting pairs), each handed to :func:`solve_lifting`. Budget
    exhaustion is recorded per generator as unknown, never as failure.
    """
    Y, X = p.source, p.target
    bound = X.max_dim
    top_dim = bound if up_to is None else min(up_to, bound)
    gens = [g for g in generators if g[1] <= top_dim]
    failures: list[SquareFailure] = []
    unknown: list[tuple] = []
    squares = 0
    for kind in gens:
        incl = _generator(kind, bound)
        A = incl.source
        n = kind[1]
        failed = False
        try:
            for b in range(X.sizes[n]):
                bottom = yoneda(X, n, b)
                on_a = compose(bottom, incl).comps
                for top_comps in extensions(A, Y, over=(p, on_a), budget=cfg.search_budget):
                    squares += 1
                    top = SimplicialMap(A, Y, top_comps)
                    out = solve_lifting(LiftingProblem(incl, p, top, bottom), cfg, check=False)
                    if isinstance(out, Filler):
                        continue
                    if isinstance(out, Refuted):
                        failures.append(SquareFailure(kind, b, top_comps, out.nodes))
                        failed = True
                        break
                    unknown.append(kind + ("budget", out.nodes))
                    failed = True
                    break
                if failed:
                    break
        except BudgetExhausted as exc:
            unknown.append(kind + ("budget", exc.nodes))
    return RlpReport(top_dim, tuple(gens), squares, tuple(failures), tuple(unknown))


def is_fibration(p: SimplicialMap, cfg: Config, up_to: int | None = None) -> RlpReport:
    return check_rlp(p, horn_generators(p.target.max_dim), cfg, up_to)


def is_trivial_fibration(p: SimplicialMap, cfg: Config, up_to: int | None = None) -> RlpReport:
    return check_rlp(p, boundary_generators(p.target.max_dim), cfg, up_to)


def is_kan(X: SimplicialSet, cfg: Config, up_to: int | None = None) -> RlpReport:
    return is_fibration(terminal_map(X), cfg, up_to)
