"""Well-ordered morphisms and their canonical forms.

Ordering each fiber makes a map rigid: an order-preserving isomorphism over
the base, if it exists, is unique. Relabelling every fiber element by its
position therefore gives a complete isomorphism invariant.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from kanforge.config import Config
from kanforge.errors import CapExceeded, InputError
from kanforge.slice import SliceObject
from kanforge.sscore import SimplicialMap, SimplicialSet

Orders = tuple[tuple[tuple[int, ...], ...], ...]


@dataclass(frozen=True, eq=False)
class WellOrderedMorphism:
    """``f : Y -> X`` with ``orders[n][x]`` listing the fiber over ``x``."""

    f: SimplicialMap
    orders: Orders

    def __post_init__(self) -> None:
        fib = self.f.fibers
        for n, lvl in enumerate(self.orders):
            if len(lvl) != self.f.target.sizes[n]:
                raise InputError(f"orders at level {n} do not cover the base")
            for x, seq in enumerate(lvl):
                if len(seq) != len(fib[n][x]) or set(seq) != set(fib[n][x]):
                    raise InputError(f"order over simplex {x} at level {n} is not an enumeration of its fiber")

    @property
    def total(self) -> SimplicialSet:
        return self.f.source

    @property
    def base(self) -> SimplicialSet:
        return self.f.target

    def as_slice(self) -> SliceObject:
        return SliceObject(self.f)

    @cached_property
    def position(self) -> tuple[dict[int, int], ...]:
        """``position[n][y]``: index of ``y`` within its fiber's order."""
        out = []
        for lvl in self.orders:
            d: dict[int, int] = {}
            for seq in lvl:
                for j, y in enumerate(seq):
                    d[y] = j
            out.append(d)
        return tuple(out)

    def max_fiber(self) -> int:
        return self.f.max_fiber()


def check_cap(f: SimplicialMap, cfg: Config) -> None:
    for n, lvl in enumerate(f.fibers):
        for x, fib in enumerate(lvl):
            if len(fib) > cfg.fiber_cap:
                raise CapExceeded(
                    f"fiber over simplex {x} at level {n} has {len(fib)} elements, above the cap {cfg.fiber_cap}",
                    level=n, simplex=x,
                )


def well_order(f: SimplicialMap, cfg: Config) -> WellOrderedMorphism:
    """Order every fiber by ascending simplex id."""
    check_cap(f, cfg)
    return WellOrderedMorphism(f, f.fibers)


@dataclass(frozen=True, eq=False)
class CanonicalWOM(WellOrderedMorphism):
    """Total simplices are keyed ``(x, position)`` and numbered in that order,
    so all orders are ``0, 1, ...`` within each fiber block."""

    @cached_property
    def canonical_key(self) -> tuple:
        return (self.base.structure_key(), self.total.faces, self.total.degens, self.f.comps)

    def same_form(self, other: CanonicalWOM) -> bool:
        return self.canonical_key == other.canonical_key

    def fiber_size(self, n: int, x: int) -> int:
        return len(self.orders[n][x])


def canonicalize(w: WellOrderedMorphism) -> CanonicalWOM:
    """Relabel each fiber element by its position in the order."""
    Y, X = w.total, w.base
    N = X.max_dim
    new_id: list[dict[int, int]] = []
    keys = []
    for n in range(N + 1):
        m: dict[int, int] = {}
        ks = []
        for x, seq in enumerate(w.orders[n]):
            for j, y in enumerate(seq):
                m[y] = len(ks)
                ks.append((x, j))
        new_id.append(m)
        keys.append(tuple(ks))
    old_of = [sorted(m, key=m.get) for m in new_id]
    faces = [()]
    for n in range(1, N + 1):
        faces.append(tuple(
            tuple(new_id[n - 1][Y.faces[n][i][y]] for y in old_of[n]) for i in range(n + 1)
        ))
    degens = []
    for n in range(N):
        degens.append(tuple(
            tuple(new_id[n + 1][Y.degens[n][i][y]] for y in old_of[n]) for i in range(n + 1)
        ))
    degens.append(())
    T = SimplicialSet(N, tuple(len(k) for k in keys), tuple(faces), tuple(degens), tuple(keys), "canonical")
    proj = SimplicialMap(T, X, tuple(tuple(x for x, _ in ks) for ks in keys))
    orders = []
    for n in range(N + 1):
        lvl, start = [], 0
        for x in range(X.sizes[n]):
            k = len(w.orders[n][x])
            lvl.append(tuple(range(start, start + k)))
            start += k
        orders.append(tuple(lvl))
    return CanonicalWOM(proj, tuple(orders))


def relabelling(w: WellOrderedMorphism) -> SimplicialMap:
    """The isomorphism from ``w``'s total onto its canonical form's total."""
    c = canonicalize(w)
    return SimplicialMap(w.total, c.total, tuple(
        tuple(c.total.index(n, (w.f.comps[n][y], w.position[n][y])) for y in range(w.total.sizes[n]))
        for n in range(w.total.max_dim + 1)
    ))


def pullback_wom(t: SimplicialMap, w: WellOrderedMorphism) -> WellOrderedMorphism:
    """``t^* w`` with the fiber over ``x'`` ordered as the fiber over ``t(x')``."""
    if not t.target.same_structure(w.base):
        raise InputError("base change does not land in the base")
    X2, Y = t.source, w.total
    N = X2.max_dim
    keys = [[(a, y) for a in range(X2.sizes[n]) for y in w.orders[n][t.comps[n][a]]] for n in range(N + 1)]
    P = SimplicialSet.build(
        N, keys,
        lambda n, i, k: (X2.faces[n][i][k[0]], Y.faces[n][i][k[1]]),
        lambda n, i, k: (X2.degens[n][i][k[0]], Y.degens[n][i][k[1]]),
        name="pullback",
    )
    proj = SimplicialMap(P, X2, tuple(tuple(a for a, _ in ks) for ks in keys))
    orders = []
    for n in range(N + 1):
        lvl, start = [], 0
        for a in range(X2.sizes[n]):
            k = len(w.orders[n][t.comps[n][a]])
            lvl.append(tuple(range(start, start + k)))
            start += k
        orders.append(tuple(lvl))
    return WellOrderedMorphism(proj, tuple(orders))


def order_preserving_iso(a: WellOrderedMorphism, b: WellOrderedMorphism) -> SimplicialMap | None:
    """The unique fiber-order-preserving isomorphism over a shared base, if any.

    Computed directly from the orders (position to position) and then
    checked to commute with every structure map.
    """
    if not a.base.same_structure(b.base):
        return None
    for la, lb in zip(a.orders, b.orders):
        if any(len(p) != len(q) for p, q in zip(la, lb)):
            return None
    comps = []
    for n in range(a.base.max_dim + 1):
        row = [0] * a.total.sizes[n]
        for sa, sb in zip(a.orders[n], b.orders[n]):
            for y, z in zip(sa, sb):
                row[y] = z
        comps.append(tuple(row))
    m = SimplicialMap(a.total, b.total, tuple(comps))
    return m if not m.violations() else None
