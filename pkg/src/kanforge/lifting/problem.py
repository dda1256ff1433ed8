"""Lifting problems and their three-valued solutions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Container

from kanforge.config import Config
from kanforge.errors import BudgetExhausted, InputError, InternalError
from kanforge.sscore import SearchStats, SimplicialMap, compose, first_extension


@dataclass(frozen=True, eq=False)
class LiftingProblem:
    """A commutative square ``p . top = bottom . left``::

        A --top--> Y
        |          |
      left         p
        v          v
        B -bottom-> X
    """

    left: SimplicialMap
    right: SimplicialMap
    top: SimplicialMap
    bottom: SimplicialMap

    def commutes(self) -> bool:
        return compose(self.right, self.top).comps == compose(self.bottom, self.left).comps


@dataclass(frozen=True)
class Filler:
    diagonal: SimplicialMap
    nodes: int


@dataclass(frozen=True)
class Refuted:
    """The search visited every branch and found no diagonal."""

    variables: int
    nodes: int
    exhaustive: bool = True


@dataclass(frozen=True)
class Exhausted:
    budget: int
    nodes: int


Outcome = Filler | Refuted | Exhausted


def _fixed_from_top(pr: LiftingProblem) -> list[list[int | None]] | None:
    """Pin every simplex in the image of ``left`` to its top value, or return
    None if two preimages disagree (no diagonal can exist)."""
    B = pr.left.target
    fixed: list[list[int | None]] = [[None] * s for s in B.sizes]
    for n, (lc, tc) in enumerate(zip(pr.left.comps, pr.top.comps)):
        row = fixed[n]
        for a, b in enumerate(lc):
            y = tc[a]
            if row[b] is None:
                row[b] = y
            elif row[b] != y:
                return None
    return fixed


def solve_lifting(
    pr: LiftingProblem,
    cfg: Config,
    allowed: Callable[[int, int], Container[int] | None] | None = None,
    check: bool = True,
) -> Outcome:
    """Find a diagonal ``B -> Y`` making both triangles commute.

    ``allowed`` optionally narrows the admissible images of free
    nondegenerate simplices of ``B`` (used for side conditions such as "the
    end of a homotopy lands in a subobject").
    """
    if check and not pr.commutes():
        raise InputError("lifting square does not commute")
    fixed = _fixed_from_top(pr)
    if fixed is None:
        return Refuted(0, 0)
    stats = SearchStats()
    try:
        sol = first_extension(
            pr.left.target,
            pr.right.source,
            fixed,
            over=(pr.right, pr.bottom.comps),
            allowed=allowed,
            budget=cfg.search_budget,
            stats=stats,
        )
    except BudgetExhausted:
        return Exhausted(cfg.search_budget, stats.nodes)
    if sol is None:
        return Refuted(stats.variables, stats.nodes)
    diag = SimplicialMap(pr.left.target, pr.right.source, sol)
    if check:
        verify_filler(pr, diag)
    return Filler(diag, stats.nodes)


def verify_filler(pr: LiftingProblem, diag: SimplicialMap) -> None:
    problems = diag.violations()
    if compose(diag, pr.left).comps != pr.top.comps:
        problems.append("upper triangle does not commute")
    if compose(pr.right, diag).comps != pr.bottom.comps:
        problems.append("lower triangle does not commute")
    if problems:
        raise InternalError("diagonal failed post-hoc verification: " + "; ".join(problems[:5]))
