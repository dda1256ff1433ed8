"""Bounded probe of the space of small fibrations equivalent to a given one.

An n-simplex of ``P_p`` is a pair ``(g, w)``: a canonical well-ordered
fibration ``g`` over ``Delta[n] x B`` with small fibers, and an equivalence
``w : Delta[n] x E -> g`` over ``Delta[n] x B``. Structure maps act by
pullback along ``alpha x B``. Contractibility of ``P_p`` is tested directly
(boundary fillers up to a chosen dimension) and, separately, through the
evaluation map into ``Q``, the object over ``B`` whose simplices over ``b``
are pairs ``(g, w : b^* E -> g)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

from kanforge.config import Config
from kanforge.errors import InputError, InternalError, Uncertified
from kanforge.homotopy import UNKNOWN, YES, WeqVerdict, is_weq
from kanforge.lifting import Filler, LiftingProblem, Refuted, is_fibration, solve_lifting
from kanforge.slice import SliceMap, SliceObject, pullback_along
from kanforge.sscore import (
    SimplicialMap,
    SimplicialSet,
    boundary,
    compose,
    extensions,
    identity,
    operator_map,
    product,
    product_map,
    retruncate,
    standard_simplex,
    terminal_map,
)
from kanforge.sscore.generators import act_on_ez, delete, repeat
from kanforge.universe.enumerate import small_fibrations
from kanforge.universe.wom import CanonicalWOM, canonicalize, pullback_wom, relabelling


@dataclass(frozen=True, eq=False)
class PPElement:
    g: CanonicalWOM
    w: SimplicialMap
    verdict: WeqVerdict = field(repr=False)

    @cached_property
    def key(self) -> tuple:
        return (self.g.canonical_key, self.w.comps)


@dataclass(frozen=True, eq=False)
class PPLevel:
    """All pairs ``(g, w)`` over ``base`` with ``w`` out of ``source``."""

    n: int
    base: SimplicialSet
    source: SliceObject
    elements: tuple[PPElement, ...]
    candidates: int = 0

    @cached_property
    def index(self) -> dict[tuple, int]:
        return {e.key: j for j, e in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)


def _pairs_over(source: SliceObject, cfg: Config) -> tuple[list[PPElement], int]:
    """Every small canonical fibration over the source's base, with every
    equivalence into it from ``source``."""
    Z = source.base
    out: list[PPElement] = []
    tried = 0
    for g in small_fibrations(Z, cfg):
        target = g.as_slice()
        for comps in extensions(source.total, g.total, over=(g.f, source.proj.comps), budget=cfg.search_budget):
            tried += 1
            m = SimplicialMap(source.total, g.total, comps)
            v = is_weq(SliceMap(source, target, m), cfg, assume_fibrant=True)
            if v.status == UNKNOWN:
                raise Uncertified(f"equivalence verdict unknown for a candidate pair: {v.detail}", "weq")
            if v.status == YES:
                out.append(PPElement(g, m, v))
    return out, tried


def _times_simplex(p: SliceObject, n: int) -> tuple[SliceObject, SimplicialSet, SimplicialMap]:
    """``Delta[n] x E`` over ``Z = Delta[n] x B``, with ``Z`` and its projection to ``B``."""
    N = p.base.max_dim
    D = standard_simplex(n, N)
    Z, _, pr_b = product(D, p.base)
    DE, _, _ = product(D, p.total)
    return SliceObject(product_map(identity(D), p.proj, DE, Z)), Z, pr_b


def pp_level(p: SliceObject, n: int, cfg: Config, check: bool = True) -> PPLevel:
    """The n-simplices of ``P_p``."""
    if check:
        rep = is_fibration(p.proj, cfg)
        if not rep.ok:
            raise InputError(f"p is not a certified fibration: {rep}")
    src, Z, _ = _times_simplex(p, n)
    elems, tried = _pairs_over(src, cfg)
    return PPLevel(n, Z, src, tuple(elems), tried)


def _pull_pair(
    e: PPElement, t: SimplicialMap, src_old: SliceObject, src_new: SliceObject, along: SimplicialMap
) -> tuple:
    """Key of the pair pulled back along ``t`` (on bases) and ``along`` (on sources)."""
    pulled = pullback_wom(t, e.g)
    rel = relabelling(pulled)
    c = canonicalize(pulled)
    P = pulled.total
    comps = []
    for m in range(src_new.total.max_dim + 1):
        row = []
        for s in range(src_new.total.sizes[m]):
            a = src_new.proj.comps[m][s]
            y = e.w.comps[m][along.comps[m][s]]
            row.append(rel.comps[m][P.index(m, (a, y))])
        comps.append(tuple(row))
    return (c.canonical_key, tuple(comps))


@dataclass(frozen=True, eq=False)
class PathSpace:
    """``P_p`` truncated at ``top``, with its levels."""

    carrier: SimplicialSet
    levels: tuple[PPLevel, ...]


def path_space(p: SliceObject, cfg: Config, top: int) -> PathSpace:
    """Levels ``0..top`` of ``P_p`` and their structure maps."""
    levels = tuple(pp_level(p, n, cfg, check=(n == 0)) for n in range(top + 1))
    N = p.base.max_dim
    cache: dict[tuple[int, tuple[int, ...]], tuple[int, ...]] = {}

    def act(n: int, alpha: tuple[int, ...]) -> tuple[int, ...]:
        hit = cache.get((n, alpha))
        if hit is not None:
            return hit
        m = len(alpha) - 1
        Lm, Ln = levels[m], levels[n]
        op = operator_map(alpha, n, N)
        B = p.base
        t = product_map(op, identity(B), Lm.base, Ln.base)
        along = product_map(op, identity(p.total), Lm.source.total, Ln.source.total)
        row = []
        for e in Ln.elements:
            k = _pull_pair(e, t, Ln.source, Lm.source, along)
            j = Lm.index.get(k)
            if j is None:
                raise InternalError(f"pulling back a {n}-simplex of the path space along {alpha} left the level")
            row.append(j)
        cache[(n, alpha)] = tuple(row)
        return cache[(n, alpha)]

    keys = [list(range(len(L))) for L in levels]
    X = SimplicialSet.build(
        top, keys,
        lambda n, i, k: act(n, delete(tuple(range(n + 1)), i))[k],
        lambda n, i, k: act(n, repeat(tuple(range(n + 1)), i))[k],
        name="P_p",
    )
    return PathSpace(X, levels)


@dataclass(frozen=True, eq=False)
class FamilySpace:
    """``Q -> B'`` with ``B'`` the base re-truncated at ``top``; simplices over
    ``b`` are pairs ``(g, w : b^* E -> g)`` over the simplex."""

    proj: SimplicialMap
    base: SimplicialSet
    decode: tuple[tuple[tuple[int, int], ...], ...]
    per_simplex: dict = field(repr=False)


def _simplex_map(B: SimplicialSet, Bt: SimplicialSet, k: int, b: int) -> SimplicialMap:
    """``b : Delta[k] -> B`` (truncated as ``B``) for a k-simplex of the re-truncation."""
    N = B.max_dim
    D = standard_simplex(k, N)
    key = Bt.keys[k][b]
    comps = []
    for m in range(N + 1):
        row = []
        for gamma in D.keys[m]:
            rd, r, sig = act_on_ez(B, key, gamma)
            row.append(B.apply_op(rd, r, sig))
        comps.append(tuple(row))
    return SimplicialMap(D, B, tuple(comps))


def family_space(p: SliceObject, cfg: Config, top: int) -> FamilySpace:
    B = p.base
    Bt = retruncate(B, top)
    pulled: dict[tuple[int, int], SliceObject] = {}
    levels: dict[tuple[int, int], PPLevel] = {}
    decode = []
    for k in range(top + 1):
        row = []
        for b in range(Bt.sizes[k]):
            s = pullback_along(_simplex_map(B, Bt, k, b), p)
            pulled[(k, b)] = s
            elems, tried = _pairs_over(s, cfg)
            levels[(k, b)] = PPLevel(k, s.base, s, tuple(elems), tried)
            row.extend((b, j) for j in range(len(elems)))
        decode.append(tuple(row))
    N = B.max_dim
    cache: dict = {}

    def act(k: int, alpha: tuple[int, ...], key: tuple[int, int]) -> tuple[int, int]:
        b, j = key
        m = len(alpha) - 1
        b2 = Bt.apply_op(k, b, alpha)
        ck = (k, b, alpha)
        if ck not in cache:
            Lk, Lm = levels[(k, b)], levels[(m, b2)]
            op = operator_map(alpha, k, N)
            src_k, src_m = pulled[(k, b)], pulled[(m, b2)]
            along = SimplicialMap(src_m.total, src_k.total, tuple(
                tuple(src_k.total.index(l, (op.comps[l][g], e)) for g, e in src_m.total.keys[l])
                for l in range(N + 1)
            ))
            row = []
            for e in Lk.elements:
                kk = _pull_pair(e, op, src_k, src_m, along)
                jj = Lm.index.get(kk)
                if jj is None:
                    raise InternalError("pulling back a family simplex left its level")
                row.append(jj)
            cache[ck] = tuple(row)
        return (b2, cache[ck][j])

    Q = SimplicialSet.build(
        top, decode,
        lambda k, i, key: act(k, delete(tuple(range(k + 1)), i), key),
        lambda k, i, key: act(k, repeat(tuple(range(k + 1)), i), key),
        name="Q",
    )
    proj = SimplicialMap(Q, Bt, tuple(tuple(b for b, _ in lvl) for lvl in decode))
    return FamilySpace(proj, Bt, tuple(decode), levels)


def evaluation(P: PathSpace, F: FamilySpace, p: SliceObject) -> SimplicialMap:
    """``ev : P_p x B' -> Q``, ``((g, w), b) |-> (id, b)^* (g, w)``."""
    B = p.base
    Bt = F.base
    PB, _, _ = product(P.carrier, Bt)
    N = B.max_dim
    Q = F.proj.source
    comps = []
    for k in range(PB.max_dim + 1):
        row = []
        Lk = P.levels[k]
        D = standard_simplex(k, N)
        for x, b in PB.keys[k]:
            bmap = _simplex_map(B, Bt, k, b)
            fam = F.per_simplex[(k, b)]
            t = SimplicialMap(D, Lk.base, tuple(
                tuple(Lk.base.index(l, (g, bmap.comps[l][g])) for g in range(D.sizes[l])) for l in range(N + 1)
            ))
            along = SimplicialMap(fam.source.total, Lk.source.total, tuple(
                tuple(Lk.source.total.index(l, (g, e)) for g, e in fam.source.total.keys[l]) for l in range(N + 1)
            ))
            kk = _pull_pair(Lk.elements[x], t, Lk.source, fam.source, along)
            j = fam.index.get(kk)
            if j is None:
                raise InternalError("evaluation left the family space")
            row.append(Q.index(k, (b, j)))
        comps.append(tuple(row))
    return SimplicialMap(PB, Q, tuple(comps))


@dataclass(frozen=True)
class ContractibilityReport:
    """Per dimension: boundary squares tried and fillers found by each route."""

    top: int
    sizes: tuple[int, ...]
    squares: tuple[int, ...]
    direct: tuple[int, ...]
    via_family: tuple[int, ...]
    disagreements: tuple[tuple[int, tuple], ...]
    unknown: int = 0

    @property
    def agree(self) -> bool:
        return not self.disagreements

    @property
    def contractible(self) -> bool:
        return self.unknown == 0 and self.direct == self.squares and self.sizes[0] > 0

    @property
    def status(self) -> str:
        if self.unknown:
            return "unknown"
        return "certified" if self.contractible and self.agree else "failed"

    def to_dict(self) -> dict[str, Any]:
        return {
            "status": self.status,
            "top": self.top,
            "sizes": list(self.sizes),
            "squares": list(self.squares),
            "direct_fillers": list(self.direct),
            "family_fillers": list(self.via_family),
            "routes_agree": self.agree,
            "unknown": self.unknown,
        }


def check_pp_contractible(p: SliceObject, cfg: Config, up_to: int = 2) -> ContractibilityReport:
    """Boundary filling in ``P_p`` for dimensions ``0..up_to``, by both routes.

    ``up_to`` bounds ``P_p`` itself; the fibrations inside each simplex are
    truncated at ``cfg.max_dim``.
    """
    P = path_space(p, cfg, up_to)
    F = family_space(p, cfg, up_to)
    ev = evaluation(P, F, p)
    X = P.carrier
    Bt = F.base
    to_pt = terminal_map(X)
    squares, direct, via, bad = [], [], [], []
    unknown = 0
    for m in range(up_to + 1):
        S, incl = boundary(m, up_to)
        D = incl.target
        SB, _, _ = product(S, Bt)
        DB, _, pr_d = product(D, Bt)
        left = product_map(incl, identity(Bt), SB, DB)
        XB = ev.source
        n_sq = n_d = n_v = 0
        for comps in extensions(S, X, budget=cfg.search_budget):
            n_sq += 1
            f = SimplicialMap(S, X, comps)
            out_d = solve_lifting(LiftingProblem(incl, to_pt, f, terminal_map(D)), cfg, check=False)
            top = compose(ev, product_map(f, identity(Bt), SB, XB))
            out_v = solve_lifting(LiftingProblem(left, F.proj, top, pr_d), cfg, check=False)
            if not isinstance(out_d, (Filler, Refuted)) or not isinstance(out_v, (Filler, Refuted)):
                unknown += 1
                continue
            hit_d, hit_v = isinstance(out_d, Filler), isinstance(out_v, Filler)
            n_d += hit_d
            n_v += hit_v
            if hit_d != hit_v:
                bad.append((m, comps))
        squares.append(n_sq)
        direct.append(n_d)
        via.append(n_v)
    return ContractibilityReport(up_to, X.sizes, tuple(squares), tuple(direct), tuple(via), tuple(bad), unknown)
