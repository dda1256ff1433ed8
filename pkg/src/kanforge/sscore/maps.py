"""Maps out of representables, and exhaustive map enumeration."""

from __future__ import annotations

from kanforge.config import Config
from kanforge.errors import InputError
from kanforge.sscore.generators import standard_simplex
from kanforge.sscore.search import SearchStats, extensions
from kanforge.sscore.simplicial import SimplicialMap, SimplicialSet

_YONEDA_CACHE: dict[tuple[int, int, int], SimplicialMap] = {}


def yoneda(X: SimplicialSet, n: int, x: int) -> SimplicialMap:
    """The map ``Delta[n] -> X`` classifying the n-simplex ``x``."""
    key = (id(X), n, x)
    hit = _YONEDA_CACHE.get(key)
    if hit is not None and hit.target is X:
        return hit
    D = standard_simplex(n, X.max_dim)
    comps = tuple(
        tuple(X.apply_op(n, x, alpha) for alpha in D.keys[m]) for m in range(X.max_dim + 1)
    )
    f = SimplicialMap(D, X, comps)
    if len(_YONEDA_CACHE) > 200_000:
        _YONEDA_CACHE.clear()
    _YONEDA_CACHE[key] = f
    return f


def operator_map(alpha: tuple[int, ...], n: int, bound: int) -> SimplicialMap:
    """``Delta[alpha] : Delta[m] -> Delta[n]`` for a monotone ``alpha``.

    Defined by composition on keys, so ``m`` and ``n`` may exceed the bound.
    """
    D = standard_simplex(n, bound)
    S = standard_simplex(len(alpha) - 1, bound)
    return SimplicialMap(S, D, tuple(
        tuple(D.index(k, tuple(alpha[j] for j in g)) for g in S.keys[k]) for k in range(bound + 1)
    ))


def enumerate_maps(
    X: SimplicialSet, Y: SimplicialSet, cfg: Config | None = None, stats: SearchStats | None = None
) -> list[SimplicialMap]:
    """All simplicial maps ``X -> Y`` in deterministic order.

    Raises :class:`~kanforge.errors.BudgetExhausted` rather than truncating.
    """
    if X.max_dim != Y.max_dim:
        raise InputError("dimension bounds differ")
    budget = cfg.search_budget if cfg is not None else 10**6
    return [SimplicialMap(X, Y, c) for c in extensions(X, Y, budget=budget, stats=stats)]
