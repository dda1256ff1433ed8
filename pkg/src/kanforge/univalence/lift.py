"""Extending an equivalence of fibrations along a monomorphism of bases."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from kanforge.config import Config
from kanforge.errors import InputError, InternalError
from kanforge.homotopy import (
    DeformationRetraction,
    Homotopy,
    WeqVerdict,
    cylinder,
    factor_weq,
    is_weq,
    verify_deformation_retraction,
)
from kanforge.homotopy.retraction import constant_index, interval
from kanforge.lifting import Filler, LiftingProblem, is_trivial_fibration, solve_lifting
from kanforge.slice import (
    SliceMap,
    SliceObject,
    pullback_along,
    pushforward,
    pushforward_map,
    unit_map,
)
from kanforge.sscore import SimplicialMap, compose, pullback, subcomplex
from kanforge.universe.wom import WellOrderedMorphism, canonicalize


@dataclass(frozen=True, eq=False)
class UnivalentLift:
    """``w_bar : E1_bar -> E2_bar`` over ``B`` restricting to ``w`` over ``A``.

    ``restriction`` is the iso ``i^* E1_bar -> E1`` and ``order`` well-orders
    ``E1_bar`` extending the order of ``E1``. ``reports`` holds the three
    certificates: restriction, fiber bound, equivalence.
    """

    source: SliceObject
    map: SliceMap
    restriction: SimplicialMap
    order: WellOrderedMorphism
    reports: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.get("ok") for r in self.reports.values())

    def to_dict(self) -> dict[str, Any]:
        return {
            "ok": self.ok,
            "total_sizes": list(self.source.total.sizes),
            "reports": self.reports,
        }


def _identification(E2: SliceObject, R2: SliceObject) -> SliceMap:
    if E2.total.same_structure(R2.total) and E2.proj.comps == R2.proj.comps:
        return SliceMap(E2, R2, SimplicialMap(E2.total, R2.total, tuple(tuple(range(s)) for s in E2.total.sizes)))
    raise InputError("E2 is not literally the pullback of E2_bar; pass the identification explicitly")


def univalent_lift(
    i: SimplicialMap,
    w: SliceMap,
    Ebar2: SliceObject,
    cfg: Config,
    ident: SliceMap | None = None,
    order: WellOrderedMorphism | None = None,
    verdict: WeqVerdict | None = None,
) -> UnivalentLift:
    """``E1_bar`` is the pullback of ``i_* w`` along ``E2_bar -> i_* i^* E2_bar -> i_* E2``.

    ``ident : E2 -> i^* E2_bar`` identifies the two objects over ``A``; it
    defaults to the identity when ``E2`` was built as that pullback.
    ``order`` well-orders ``E1`` (by id when omitted).
    """
    if not i.is_mono():
        raise InputError("base inclusion is not a monomorphism")
    if not i.target.same_structure(Ebar2.base) or not i.source.same_structure(w.target.base):
        raise InputError("inclusion, equivalence and extension do not share bases")
    verdict = verdict if verdict is not None else is_weq(w, cfg)
    if not verdict.yes:
        raise InputError(f"univalent_lift needs a certified equivalence, got {verdict.status}")
    E1, E2 = w.source, w.target

    eta, PR = unit_map(i, Ebar2, cfg)
    R2 = PR.fibration
    ident = ident if ident is not None else _identification(E2, R2)
    if not ident.map.is_iso() or ident.violations():
        raise InputError("identification of E2 with the restriction of E2_bar is not an isomorphism over A")
    back = ident.map.inverse()
    P1 = pushforward(i, E1, cfg, enforce_cap=False)
    P2 = pushforward(i, E2, cfg, enforce_cap=False)
    iw = pushforward_map(w, P1, P2)
    zeta = compose(pushforward_map(SliceMap(R2, E2, back), PR, P2).map, eta.map)
    T, wbar_map, _ = pullback(zeta, iw.map)
    Ebar1 = SliceObject(compose(Ebar2.proj, wbar_map))
    wbar = SliceMap(Ebar1, Ebar2, wbar_map)
    N = T.max_dim

    # (a) restriction to A
    R1 = pullback_along(i, Ebar1)
    phi = []
    for n in range(N + 1):
        top = tuple(range(n + 1))
        row = []
        for a, eb in R1.total.keys[n]:
            x, s = P1.decode[n][T.keys[n][eb][1]]
            row.append(s[n][P1.domain(n, x).index(n, top)])
        phi.append(tuple(row))
    phi = SimplicialMap(R1.total, E1.total, tuple(phi))
    commutes = all(
        ident.map.comps[n][w.map.comps[n][phi.comps[n][r]]] == R2.total.index(n, (a, T.keys[n][eb][0]))
        for n in range(N + 1)
        for r, (a, eb) in enumerate(R1.total.keys[n])
    )
    base_order = order if order is not None else WellOrderedMorphism(E1.proj, E1.proj.fibers)
    if order is not None and not order.f.same_as(E1.proj):
        raise InputError("order is not an order on E1")
    iso = phi.is_iso() and not phi.violations() and phi.comps and all(
        E1.proj.comps[n][phi.comps[n][r]] == a for n in range(N + 1) for r, (a, _) in enumerate(R1.total.keys[n])
    )
    same_form = False
    if iso:
        pos = base_order.position
        r_orders = tuple(
            tuple(tuple(sorted(fib, key=lambda r, n=n: pos[n][phi.comps[n][r]])) for fib in lvl)
            for n, lvl in enumerate(R1.proj.fibers)
        )
        same_form = canonicalize(WellOrderedMorphism(R1.proj, r_orders)).same_form(canonicalize(base_order))
    report_a = {"ok": bool(iso and commutes and same_form), "iso": bool(iso), "commutes": commutes,
                "canonical_forms_agree": same_form}

    # order on E1_bar extending that of E1
    r_index = R1.total._key_index
    inv_i = i.preimage_table()
    orders = []
    for n in range(N + 1):
        lvl = []
        for b, fib in enumerate(Ebar1.proj.fibers[n]):
            a = inv_i[n].get(b)
            if a is None or not iso:
                lvl.append(fib)
            else:
                lvl.append(tuple(sorted(fib, key=lambda eb, n=n, a=a: base_order.position[n][
                    phi.comps[n][r_index[n][(a, eb)]]])))
        orders.append(tuple(lvl))
    order_bar = WellOrderedMorphism(Ebar1.proj, tuple(orders))

    # (b) fiber bound
    mf = Ebar1.max_fiber()
    report_b = {"ok": mf <= cfg.fiber_cap, "max_fiber": mf, "cap": cfg.fiber_cap}

    # (c) equivalence, by case
    case = factor_weq(w, cfg, verdict)
    report_c: dict[str, Any] = {"case": case.kind}
    if case.kind == "trivial-fibration":
        rep = is_trivial_fibration(wbar.map, cfg)
        report_c.update(ok=rep.ok, trivial_fibration=rep.to_dict())
    elif case.kind == "trivial-cofibration":
        ok, detail = _extend_retraction(i, wbar, Ebar2, ident, case.retraction, R2, cfg)
        report_c.update(ok=ok, detail=detail)
    else:
        v = is_weq(wbar, cfg)
        report_c.update(ok=v.yes, verdict=v.to_dict())
    return UnivalentLift(Ebar1, wbar, phi, order_bar, {"restriction": report_a, "bound": report_b, "weq": report_c})


def _extend_retraction(
    i: SimplicialMap,
    wbar: SliceMap,
    Ebar2: SliceObject,
    ident: SliceMap,
    d: DeformationRetraction,
    R2: SliceObject,
    cfg: Config,
) -> tuple[bool, str]:
    """Extend the deformation retraction of ``E2`` onto ``E1`` to one of
    ``E2_bar`` onto ``E1_bar`` by lifting against ``E2_bar -> B``."""
    Y = Ebar2.total
    cyl, pr, _ = cylinder(Y)
    D1 = interval(Y.max_dim)
    N = Y.max_dim
    zero = [constant_index(D1, n, 0) for n in range(N + 1)]
    # iota : E2 -> E2_bar through the identification
    iota = tuple(tuple(R2.total.keys[n][ident.map.comps[n][e]][1] for e in range(ident.map.source.sizes[n]))
                 for n in range(N + 1))
    from_a = [dict() for _ in range(N + 1)]
    for n in range(N + 1):
        for e, y in enumerate(iota[n]):
            from_a[n][y] = e
    img = wbar.map.image_flags()
    Hc = d.H.H
    L, incl = subcomplex(
        cyl,
        lambda n, z: cyl.keys[n][z][1] == zero[n] or img[n][cyl.keys[n][z][0]] or cyl.keys[n][z][0] in from_a[n],
    )
    top = []
    for n in range(N + 1):
        row = []
        for y, t in L.keys[n]:
            e = from_a[n].get(y)
            if e is not None:
                row.append(iota[n][Hc.comps[n][Hc.source.index(n, (e, t))]])
            else:
                row.append(y)
        top.append(tuple(row))
    top_map = SimplicialMap(L, Y, tuple(top))
    pr_ = LiftingProblem(incl, Ebar2.proj, top_map, compose(Ebar2.proj, pr))
    if not pr_.commutes() or top_map.violations():
        raise InternalError("extension square for the homotopy does not commute")
    out = solve_lifting(pr_, cfg)
    if not isinstance(out, Filler):
        return False, f"homotopy extension search: {type(out).__name__}"
    dbar = DeformationRetraction(Ebar2, wbar, Homotopy(out.diagonal))
    bad = verify_deformation_retraction(dbar)
    if bad:
        return False, "; ".join(bad)
    return True, "deformation retraction extended"
