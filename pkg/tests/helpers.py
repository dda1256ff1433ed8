"""Small fixtures shared by the test modules."""

from __future__ import annotations

from kanforge.config import Config
from kanforge.slice import SliceObject, pushforward
from kanforge.sscore import (
    SimplicialMap,
    SimplicialSet,
    codiscrete,
    discrete,
    point,
    product,
    standard_simplex,
    terminal_map,
)

CFG2 = Config(max_dim=2)
CFG3 = Config(max_dim=3)


def vertex(X: SimplicialSet, v: int) -> SimplicialMap:
    """``Delta[0] -> X`` picking ``v``, with the point as source."""
    pt = point(X.max_dim)
    return SimplicialMap(pt, X, tuple((X.apply_op(0, v, (0,) * (n + 1)),) for n in range(X.max_dim + 1)))


def over_point(X: SimplicialSet) -> SliceObject:
    return SliceObject(terminal_map(X))


def two_points(N: int = 2) -> SliceObject:
    return over_point(discrete(2, N))


def groupoid(N: int = 2) -> SimplicialSet:
    """Truncated nerve of the contractible groupoid on two objects."""
    return codiscrete(2, N)


def edges_over_interval(N: int = 2) -> SliceObject:
    """``2.Delta[0] x Delta[1] -> Delta[1]``: two disjoint edges."""
    P, _, pr = product(discrete(2, N), standard_simplex(1, N))
    return SliceObject(pr)


def wedge(cfg: Config = CFG2) -> SliceObject:
    """Pushforward of ``2.Delta[0]`` along vertex 0 of ``Delta[1]``: two edges
    meeting over vertex 1."""
    D1 = standard_simplex(1, cfg.max_dim)
    return pushforward(vertex(D1, 0), two_points(cfg.max_dim), cfg.replace(fiber_cap=8)).carrier


def empty_or_point(N: int = 2) -> SliceObject:
    """Over ``2.Delta[0]``: empty fiber over 0, a point over 1."""
    two = discrete(2, N)
    return SliceObject(vertex(two, 1))
