"""Right adjoint to pullback along a monomorphism, by its fiberwise formula.

For ``i: A -> B`` mono and ``p: E -> A``, the fiber of ``i_* p`` over an
n-simplex ``x`` of ``B`` is the set of maps over ``A`` from ``i^* x`` to ``p``.
Since ``i`` is mono, ``i^* x`` is the simplicial subset ``S_x`` of ``Delta[n]``
of operators ``g`` with ``x . g`` in the image of ``i``, so a fiber element is
a section of ``p`` along ``S_x``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from kanforge.config import Config
from kanforge.errors import BudgetExhausted, CapExceeded, InputError, InternalError
from kanforge.lifting import is_trivial_fibration, RlpReport
from kanforge.slice.hom import build_from_fibers
from kanforge.slice.objects import SliceMap, SliceObject, is_pullback_square, pullback_along
from kanforge.sscore import (
    SearchStats,
    SimplicialMap,
    SimplicialSet,
    compose,
    extensions,
    standard_simplex,
    subcomplex,
)

Comps = tuple[tuple[int, ...], ...]


def restriction_domain(i: SimplicialMap, n: int, x: int) -> tuple[SimplicialSet, Comps]:
    """``S_x`` inside ``Delta[n]`` and the map ``S_x -> A``."""
    B = i.target
    inv = i.preimage_table()
    D = standard_simplex(n, B.max_dim)
    S, incl = subcomplex(D, lambda m, g: B.apply_op(n, x, D.keys[m][g]) in inv[m])
    to_a = tuple(
        tuple(inv[m][B.apply_op(n, x, S.keys[m][g])] for g in range(S.sizes[m])) for m in range(B.max_dim + 1)
    )
    return S, to_a


@dataclass(frozen=True, eq=False)
class Pushforward:
    """``i_* p`` over ``B``; simplices decode as ``(x, s)`` with ``s`` a section
    of ``p`` over ``S_x`` (components indexed like ``S_x``)."""

    carrier: SliceObject
    inclusion: SimplicialMap
    fibration: SliceObject
    decode: tuple[tuple[tuple[int, Comps], ...], ...]
    domains: dict = field(repr=False, compare=False)

    def domain(self, n: int, x: int) -> SimplicialSet:
        return self.domains[(n, x)][0]

    @cached_property
    def index(self) -> tuple[dict, ...]:
        return tuple({e: j for j, e in enumerate(lvl)} for lvl in self.decode)

    def lookup(self, n: int, x: int, s: Comps) -> int:
        return self.index[n][(x, s)]


def _check_mono(i: SimplicialMap) -> None:
    if not i.is_mono():
        raise InputError("pushforward needs a monomorphism")


def pushforward(
    i: SimplicialMap, p: SliceObject, cfg: Config, enforce_cap: bool = True
) -> Pushforward:
    """``i_* p``; fibers larger than ``cfg.fiber_cap`` are rejected when
    ``enforce_cap`` is set, naming the offending simplex."""
    _check_mono(i)
    if not i.source.same_structure(p.base):
        raise InputError("fibration is not over the domain of the inclusion")
    B, E = i.target, p.total
    N = B.max_dim
    domains: dict = {}
    elements: list[list[tuple[int, Comps]]] = []
    spent = 0
    for n in range(N + 1):
        lvl = []
        for x in range(B.sizes[n]):
            S, to_a = restriction_domain(i, n, x)
            domains[(n, x)] = (S, to_a)
            stats = SearchStats()
            try:
                sections = list(extensions(
                    S, E, over=(p.proj, to_a), budget=cfg.search_budget - spent, stats=stats
                ))
            except BudgetExhausted as exc:
                raise BudgetExhausted(
                    f"pushforward: fiber over simplex {x} at level {n} exceeds the budget",
                    spent + exc.nodes, stage=f"level {n}",
                ) from None
            spent += stats.nodes
            if enforce_cap and len(sections) > cfg.fiber_cap:
                raise CapExceeded(
                    f"pushforward fiber over simplex {x} at level {n} has {len(sections)} "
                    f"elements, above the cap {cfg.fiber_cap}",
                    level=n, simplex=x,
                )
            lvl.extend((x, s) for s in sections)
        elements.append(lvl)

    def act(n: int, x: int, alpha: tuple[int, ...], s: Comps) -> Comps:
        m = len(alpha) - 1
        x2 = B.apply_op(n, x, alpha)
        S = domains[(n, x)][0]
        S2 = domains[(m, x2)][0]
        out = []
        for k in range(N + 1):
            out.append(tuple(
                s[k][S.index(k, tuple(alpha[v] for v in beta))] for beta in S2.keys[k]
            ))
        return tuple(out)

    T = build_from_fibers(B, elements, act, "pushforward")
    proj = SimplicialMap(T, B, tuple(tuple(x for x, _ in lvl) for lvl in elements))
    return Pushforward(SliceObject(proj), i, p, tuple(tuple(lvl) for lvl in elements), domains)


def fiber_bound(i: SimplicialMap, p: SliceObject) -> int:
    """Largest ``(max fiber of p) ** (nondegenerate simplices of S_x)`` over all x."""
    m = p.max_fiber()
    best = 1
    B = i.target
    for n in range(B.max_dim + 1):
        for x in range(B.sizes[n]):
            S, _ = restriction_domain(i, n, x)
            best = max(best, m ** sum(S.nondeg_counts()))
    return best


def pushforward_map(f: SliceMap, P1: Pushforward, P2: Pushforward) -> SliceMap:
    """``i_* f : i_* E1 -> i_* E2`` by postcomposition of sections."""
    T1, T2 = P1.carrier.total, P2.carrier.total
    comps = []
    for n in range(T1.max_dim + 1):
        row = []
        for x, s in P1.decode[n]:
            s2 = tuple(tuple(f.map.comps[k][e] for e in s[k]) for k in range(len(s)))
            row.append(P2.lookup(n, x, s2))
        comps.append(tuple(row))
    return SliceMap(P1.carrier, P2.carrier, SimplicialMap(T1, T2, tuple(comps)))


def unit_map(i: SimplicialMap, q: SliceObject, cfg: Config, target: Pushforward | None = None) -> tuple[SliceMap, Pushforward]:
    """``eta: q -> i_* i^* q``: a simplex ``y`` over ``x`` goes to the section
    ``g |-> (i^{-1}(x g), y g)``. Returns the unit and the pushforward it lands in."""
    _check_mono(i)
    pulled = pullback_along(i, q)
    P = target if target is not None else pushforward(i, pulled, cfg, enforce_cap=False)
    Y = q.total
    Q = pulled.total
    comps = []
    for n in range(Y.max_dim + 1):
        row = []
        for y in range(Y.sizes[n]):
            x = q.proj.comps[n][y]
            S, to_a = P.domains[(n, x)]
            s = tuple(
                tuple(Q.index(k, (to_a[k][g], Y.apply_op(n, y, S.keys[k][g]))) for g in range(S.sizes[k]))
                for k in range(Y.max_dim + 1)
            )
            row.append(P.lookup(n, x, s))
        comps.append(tuple(row))
    return SliceMap(q, P.carrier, SimplicialMap(Y, P.carrier.total, tuple(comps))), P


@dataclass(frozen=True, eq=False)
class CounitIso:
    counit: SliceMap
    inverse: SliceMap
    restricted: SliceObject


def counit_iso(i: SimplicialMap, p: SliceObject, cfg: Config, P: Pushforward | None = None) -> CounitIso:
    """``i^* i_* p -> p`` together with its verified two-sided inverse."""
    _check_mono(i)
    P = P if P is not None else pushforward(i, p, cfg, enforce_cap=False)
    R = pullback_along(i, P.carrier)
    RT, E = R.total, p.total
    N = E.max_dim
    fwd = []
    for n in range(N + 1):
        top = tuple(range(n + 1))
        row = []
        for a, t in RT.keys[n]:
            x, s = P.decode[n][t]
            S = P.domain(n, x)
            row.append(s[n][S.index(n, top)])
        fwd.append(tuple(row))
    back = []
    for n in range(N + 1):
        row = []
        for e in range(E.sizes[n]):
            a = p.proj.comps[n][e]
            x = i.comps[n][a]
            S = P.domain(n, x)
            s = tuple(
                tuple(E.apply_op(n, e, S.keys[k][g]) for g in range(S.sizes[k])) for k in range(N + 1)
            )
            row.append(RT.index(n, (a, P.lookup(n, x, s))))
        back.append(tuple(row))
    counit = SliceMap(R, p, SimplicialMap(RT, E, tuple(fwd)))
    inverse = SliceMap(p, R, SimplicialMap(E, RT, tuple(back)))
    ok = (
        compose(counit.map, inverse.map).comps == tuple(tuple(range(s)) for s in E.sizes)
        and compose(inverse.map, counit.map).comps == tuple(tuple(range(s)) for s in RT.sizes)
        and not counit.violations()
        and not inverse.violations()
    )
    if not ok:
        raise InternalError("counit failed to verify as an isomorphism")
    return CounitIso(counit, inverse, R)


@dataclass(frozen=True, eq=False)
class JoyalExtension:
    """``j_* t`` over ``X'`` with the square exhibiting ``t`` as its pullback."""

    extension: SliceObject
    square_top: SimplicialMap
    report: RlpReport
    pushforward: Pushforward


def joyal_extend(j: SimplicialMap, t: SliceObject, cfg: Config, precheck: RlpReport | None = None) -> JoyalExtension:
    """Extend a trivial fibration along a monomorphism ``j``.

    The precondition is a certified bounded trivial-fibration report for ``t``
    (computed here unless supplied). The square's top edge comes from the
    counit inverse and is re-verified as a pullback.
    """
    pre = precheck if precheck is not None else is_trivial_fibration(t.proj, cfg)
    if not pre.ok:
        raise InputError(f"joyal_extend needs a trivial fibration: {pre}")
    P = pushforward(j, t, cfg)
    c = counit_iso(j, t, cfg, P)
    R = c.restricted
    to_ext = SimplicialMap(R.total, P.carrier.total, tuple(tuple(e for _, e in lvl) for lvl in R.total.keys))
    top = compose(to_ext, c.inverse.map)
    if not is_pullback_square(top, t.proj, P.carrier.proj, j):
        raise InternalError("extension square failed the pullback test")
    report = is_trivial_fibration(P.carrier.proj, cfg)
    if P.carrier.max_fiber() > cfg.fiber_cap:
        raise CapExceeded("extended trivial fibration exceeds the fiber cap")
    return JoyalExtension(P.carrier, top, report, P)
