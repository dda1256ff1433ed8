"""Objects of fiberwise equivalences, the diagonal into them, and univalence verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from kanforge.config import Config
from kanforge.errors import InputError, InternalError, Uncertified
from kanforge.homotopy import NO, UNKNOWN, YES, WeqVerdict, is_weq, pi0_obstruction
from kanforge.lifting import RlpReport, is_fibration, is_kan, is_trivial_fibration
from kanforge.slice import HomObject, SliceMap, SliceObject, internal_hom, over_itself, pullback_along
from kanforge.sscore import SimplicialMap, compose, product

UNIVALENT, NOT_UNIVALENT = "univalent", "not-univalent"


@dataclass(frozen=True, eq=False)
class EqObject:
    """The simplicial subset of ``Hom_B(E1, E2)`` on fiberwise equivalences.

    ``decode[n][h] = (b, u)`` as for the internal hom; ``verdicts`` holds the
    certificate admitting each simplex. Over ``B x B`` the maps ``s``, ``t``
    and ``delta`` are filled in.
    """

    carrier: SliceObject
    hom: HomObject
    verdicts: dict = field(repr=False)
    s: SimplicialMap | None = None
    t: SimplicialMap | None = None
    delta: SimplicialMap | None = None

    @property
    def decode(self):
        return self.hom.decode

    @property
    def total(self):
        return self.carrier.total


def _require_fibration(E: SliceObject, cfg: Config, what: str) -> None:
    rep = is_fibration(E.proj, cfg)
    if not rep.ok:
        raise InputError(f"{what} is not a certified fibration: {rep}")


def eq_object(E1: SliceObject, E2: SliceObject, cfg: Config, check_fibrant: bool = True) -> EqObject:
    """Keep the hom simplices whose fiber map has verdict yes.

    Any unknown verdict aborts with an error naming the simplex.
    """
    if check_fibrant:
        _require_fibration(E1, cfg, "source")
        _require_fibration(E2, cfg, "target")
    verdicts: dict[tuple[int, int, Any], WeqVerdict] = {}

    def keep(n: int, b: int, m: SimplicialMap) -> bool:
        f = SliceMap(E1.over_simplex(n, b), E2.over_simplex(n, b), m)
        v = is_weq(f, cfg, assume_fibrant=True)
        if v.status == UNKNOWN:
            raise Uncertified(
                f"equivalence verdict unknown for the map over base simplex {b} at level {n}: {v.detail}",
                "weq",
            )
        if v.status == YES:
            verdicts[(n, b, m.comps)] = v
            return True
        return False

    try:
        H = internal_hom(E1, E2, cfg, keep=keep)
    except KeyError as exc:
        raise InternalError(f"equivalences are not closed under restriction: {exc}") from None
    return EqObject(H.carrier, H, verdicts)


def eq_self(E: SliceObject, cfg: Config) -> EqObject:
    """``Eq(E)`` over ``B x B`` with diagonal ``delta`` and the two projections ``s``, ``t``."""
    _require_fibration(E, cfg, "fibration")
    B = E.base
    BB, pr1, pr2 = product(B, B)
    E1 = pullback_along(pr1, E)
    E2 = pullback_along(pr2, E)
    eq = eq_object(E1, E2, cfg, check_fibrant=False)
    T = eq.total
    N = B.max_dim
    delta = []
    for n in range(N + 1):
        row = []
        for b in range(B.sizes[n]):
            bb = BB.index(n, (b, b))
            P1, P2 = E1.over_simplex(n, bb), E2.over_simplex(n, bb)
            u = tuple(
                tuple(
                    P2.total.index(m, (g, E2.total.index(m, E1.total.keys[m][e1])))
                    for g, e1 in P1.total.keys[m]
                )
                for m in range(N + 1)
            )
            try:
                row.append(T.index(n, (bb, u)))
            except KeyError:
                raise InternalError(f"identity over base simplex {b} at level {n} is not in Eq") from None
        delta.append(tuple(row))
    d = SimplicialMap(B, T, tuple(delta))
    s = compose(pr1, eq.carrier.proj)
    t = compose(pr2, eq.carrier.proj)
    ident = tuple(tuple(range(k)) for k in B.sizes)
    if not d.is_mono() or compose(s, d).comps != ident or compose(t, d).comps != ident or d.violations():
        raise InternalError("diagonal failed its retraction checks")
    return EqObject(eq.carrier, eq.hom, eq.verdicts, s, t, d)


@dataclass(frozen=True)
class UnivalenceVerdict:
    status: str
    route: str
    evidence: Any = field(default=None, compare=False)
    detail: str = ""

    def to_dict(self) -> dict:
        ev = self.evidence
        if hasattr(ev, "to_dict"):
            ev = ev.to_dict()
        return {"status": self.status, "route": self.route, "evidence": ev, "detail": self.detail}


def delta_as_slice_map(E: SliceObject, eq: EqObject) -> SliceMap:
    """``delta : B -> Eq(E)`` as a map over ``B``, with ``Eq(E)`` over ``B`` by ``s``."""
    B = E.base
    return SliceMap(over_itself(B), SliceObject(eq.s), eq.delta)


def is_univalent(E: SliceObject, cfg: Config, eq: EqObject | None = None) -> UnivalenceVerdict:
    """Bounded univalence verdict.

    The target projection ``t`` is tested first as a trivial fibration; then
    ``delta`` goes through the equivalence pipeline; finally ``pi0`` of the
    base and of ``Eq(E)`` are compared.
    """
    base_rep = is_kan(E.base, cfg)
    if not base_rep.ok:
        raise InputError(f"base is not a certified Kan complex: {base_rep}")
    eq = eq if eq is not None else eq_self(E, cfg)
    t_rep = is_trivial_fibration(eq.t, cfg)
    if t_rep.ok:
        return UnivalenceVerdict(UNIVALENT, "t-trivial-fibration", t_rep)
    v = is_weq(delta_as_slice_map(E, eq), cfg)
    if v.status == YES:
        return UnivalenceVerdict(UNIVALENT, "delta-weq", v)
    if v.status == NO:
        route = "pi0" if v.certificate == "pi0" else "delta-weq"
        return UnivalenceVerdict(NOT_UNIVALENT, route, v, "diagonal is not an equivalence")
    obs = pi0_obstruction(eq.delta)
    if obs is not None:
        return UnivalenceVerdict(NOT_UNIVALENT, "pi0", obs)
    return UnivalenceVerdict(UNKNOWN, "budget", cfg.search_budget, v.detail or str(t_rep))


def t_route_report(eq: EqObject, cfg: Config) -> RlpReport:
    return is_trivial_fibration(eq.t, cfg)
