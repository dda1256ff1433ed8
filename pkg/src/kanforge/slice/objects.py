"""Objects and morphisms of the slice category over a base simplicial set."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from kanforge.errors import InputError
from kanforge.sscore import (
    SimplicialMap,
    SimplicialSet,
    compose,
    identity,
    pullback,
    yoneda,
)


@dataclass(frozen=True, eq=False)
class SliceObject:
    proj: SimplicialMap

    @property
    def total(self) -> SimplicialSet:
        return self.proj.source

    @property
    def base(self) -> SimplicialSet:
        return self.proj.target

    def fiber_sizes(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(len(f) for f in lvl) for lvl in self.proj.fibers)

    def max_fiber(self) -> int:
        return self.proj.max_fiber()

    @cached_property
    def _over_simplex(self) -> dict:
        return {}

    def over_simplex(self, n: int, b: int) -> SliceObject:
        """``b^* E`` over ``Delta[n]``, simplices keyed ``(gamma, e)``. Memoized."""
        hit = self._over_simplex.get((n, b))
        if hit is None:
            hit = pullback_along(yoneda(self.base, n, b), self)
            self._over_simplex[(n, b)] = hit
        return hit

    def __repr__(self) -> str:
        return f"<SliceObject {self.total!r} over {self.base!r}>"


@dataclass(frozen=True, eq=False)
class SliceMap:
    source: SliceObject
    target: SliceObject
    map: SimplicialMap

    def violations(self) -> list[str]:
        out = self.map.violations()
        if compose(self.target.proj, self.map).comps != self.source.proj.comps:
            out.append("map does not commute with the projections")
        return out

    def is_iso(self) -> bool:
        return self.map.is_iso()

    def is_mono(self) -> bool:
        return self.map.is_mono()


def slice_identity(E: SliceObject) -> SliceMap:
    return SliceMap(E, E, identity(E.total))


def over_itself(X: SimplicialSet) -> SliceObject:
    return SliceObject(identity(X))


def pullback_along(t: SimplicialMap, p: SliceObject) -> SliceObject:
    """``t^* p``: simplices ``(x', e)`` with ``t(x') = p(e)``, projected to ``x'``."""
    if not t.target.same_structure(p.base):
        raise InputError("base change does not land in the base of the object")
    _P, to_base, _to_total = pullback(t, p.proj)
    return SliceObject(to_base)


def pullback_to_total(t: SimplicialMap, p: SliceObject, P: SliceObject) -> SimplicialMap:
    """Second projection ``t^* p -> p.total`` of a pullback built by :func:`pullback_along`."""
    return SimplicialMap(P.total, p.total, tuple(tuple(e for _, e in lvl) for lvl in P.total.keys))


def pullback_map(t: SimplicialMap, f: SliceMap, P1: SliceObject, P2: SliceObject) -> SliceMap:
    """``t^* f : t^* E1 -> t^* E2`` given both pulled-back objects."""
    comps = []
    for n in range(P1.total.max_dim + 1):
        fc = f.map.comps[n]
        comps.append(tuple(P2.total.index(n, (a, fc[e])) for a, e in P1.total.keys[n]))
    return SliceMap(P1, P2, SimplicialMap(P1.total, P2.total, tuple(comps)))


def is_pullback_square(
    top: SimplicialMap, left: SimplicialMap, right: SimplicialMap, bottom: SimplicialMap
) -> bool:
    """Universal-property test of a commutative square

        P --top--> Y
        |          |
      left       right
        v          v
        X -bottom-> Z

    via the comparison map into the levelwise fiber product."""
    if compose(right, top).comps != compose(bottom, left).comps:
        return False
    Q, _, _ = pullback(bottom, right)
    comp = []
    for n in range(top.source.max_dim + 1):
        comp.append([Q.index(n, (left.comps[n][z], top.comps[n][z])) for z in range(top.source.sizes[n])])
    return all(len(set(c)) == len(c) == s for c, s in zip(comp, Q.sizes))
