"""Three-valued weak-equivalence verdicts and the case split for equivalences."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from kanforge.config import Config
from kanforge.errors import InputError, Uncertified
from kanforge.homotopy.retraction import (
    DeformationRetraction,
    constant_index,
    find_deformation_retraction,
    interval,
)
from kanforge.lifting import Exhausted, RlpReport, is_fibration, is_trivial_fibration
from kanforge.slice import SliceMap, SliceObject, pullback_map
from kanforge.sscore import SimplicialMap, SimplicialSet, compose, yoneda

YES, NO, UNKNOWN = "yes", "no", "unknown"


def pi0(X: SimplicialSet) -> list[tuple[int, ...]]:
    """Connected components as sorted vertex tuples, ordered by least vertex."""
    parent = list(range(X.sizes[0]))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    if X.max_dim >= 1:
        for e in range(X.sizes[1]):
            a, b = find(X.faces[1][0][e]), find(X.faces[1][1][e])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for v in range(X.sizes[0]):
        groups.setdefault(find(v), []).append(v)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])


def component_labels(X: SimplicialSet) -> list[int]:
    lab = [0] * X.sizes[0]
    for c, comp in enumerate(pi0(X)):
        for v in comp:
            lab[v] = c
    return lab


@dataclass(frozen=True)
class Pi0Obstruction:
    source_components: int
    target_components: int
    injective: bool
    surjective: bool

    def to_dict(self) -> dict:
        return {
            "source_components": self.source_components,
            "target_components": self.target_components,
            "injective": self.injective,
            "surjective": self.surjective,
        }


def pi0_obstruction(f: SimplicialMap) -> Pi0Obstruction | None:
    """None when ``pi0(f)`` is a bijection."""
    la, lb = component_labels(f.source), component_labels(f.target)
    ca, cb = max(la, default=-1) + 1, max(lb, default=-1) + 1
    induced: dict[int, set[int]] = {}
    for v, c in enumerate(la):
        induced.setdefault(c, set()).add(lb[f.comps[0][v]])
    images = [next(iter(s)) for _, s in sorted(induced.items())]
    inj = len(set(images)) == len(images)
    surj = len(set(images)) == cb
    if inj and surj:
        return None
    return Pi0Obstruction(ca, cb, inj, surj)


@dataclass(frozen=True)
class WeqVerdict:
    """``status`` is yes, no or unknown; ``certificate`` names the evidence kind."""

    status: str
    certificate: str
    evidence: Any = field(default=None, compare=False)
    detail: str = ""

    @property
    def yes(self) -> bool:
        return self.status == YES

    def to_dict(self) -> dict:
        ev = self.evidence
        if hasattr(ev, "to_dict"):
            ev = ev.to_dict()
        elif isinstance(ev, DeformationRetraction):
            ev = {"homotopy_levels": list(ev.H.H.source.sizes)}
        elif isinstance(ev, list):
            ev = [{"vertex": v, **w.to_dict()} for v, w in ev]
        elif ev is not None and not isinstance(ev, (int, str, dict)):
            ev = repr(ev)
        return {"status": self.status, "certificate": self.certificate, "evidence": ev, "detail": self.detail}


def fiber_map(f: SliceMap, v: int) -> SliceMap:
    """Restriction of ``f`` to the fibers over vertex ``v`` of the base."""
    t = yoneda(f.source.base, 0, v)
    P1 = f.source.over_simplex(0, v)
    P2 = f.target.over_simplex(0, v)
    return pullback_map(t, f, P1, P2)


def _decide(f: SliceMap, cfg: Config, reduce: bool) -> WeqVerdict:
    if f.map.is_iso():
        return WeqVerdict(YES, "iso")
    pending: list[str] = []
    tf = is_trivial_fibration(f.map, cfg)
    if tf.ok:
        return WeqVerdict(YES, "trivial-fibration", tf)
    if tf.unknown:
        pending.append("trivial-fibration check ran out of budget")
    if f.is_mono():
        d = find_deformation_retraction(f, cfg)
        if isinstance(d, DeformationRetraction):
            return WeqVerdict(YES, "deformation-retraction", d)
        if isinstance(d, Exhausted):
            pending.append("deformation-retraction search ran out of budget")
    B = f.source.base
    if reduce and any(s != 1 for s in B.sizes):
        trace = []
        # every vertex, not one per component: below the top dimension a
        # bounded fibration need not transport fibers to equivalent fibers
        for v in range(B.sizes[0]):
            sub = _decide(fiber_map(f, v), cfg, reduce=False)
            trace.append((v, sub))
            if sub.status == NO:
                return WeqVerdict(NO, "fiberwise", trace, f"fiber over vertex {v} is not an equivalence")
        if all(s.status == YES for _, s in trace):
            return WeqVerdict(YES, "fiberwise", trace)
        pending.append("some vertex fiber is undecided")
    obs = pi0_obstruction(f.map)
    if obs is not None:
        return WeqVerdict(NO, "pi0", obs)
    return WeqVerdict(UNKNOWN, "budget", cfg.search_budget, "; ".join(pending) or "no certificate found")


def is_weq(f: SliceMap, cfg: Config, assume_fibrant: bool = False) -> WeqVerdict:
    """Decide whether ``f`` is a weak equivalence, soundly but partially.

    Tries, in order: isomorphism, bounded trivial fibration, deformation
    retraction (for monos), reduction to the fibers over every vertex of
    the base, and a pi0 obstruction. Without ``assume_fibrant`` both
    projections must first pass bounded fibration checks.
    """
    if not f.source.base.same_structure(f.target.base):
        raise InputError("map is not over a single base")
    if not assume_fibrant:
        for side, E in (("source", f.source), ("target", f.target)):
            rep = is_fibration(E.proj, cfg)
            if not rep.ok:
                return WeqVerdict(UNKNOWN, "fibrancy", rep, f"{side} projection is not a certified fibration")
    return _decide(f, cfg, reduce=True)


def mapping_cylinder(w: SliceMap) -> tuple[SliceObject, SliceMap, SliceMap]:
    """``Cyl(w) = E1 x Delta[1]`` glued to ``E2`` along ``E1 x {1}``, over ``A``.

    Returns the cylinder with the inclusion ``m`` of ``E1 x {0}`` and the
    collapse ``q`` onto ``E2``; ``q . m = w``.
    """
    E1, E2 = w.source.total, w.target.total
    N = E1.max_dim
    D1 = interval(N)
    one = [constant_index(D1, n, 1) for n in range(N + 1)]
    zero = [constant_index(D1, n, 0) for n in range(N + 1)]
    levels = [
        [("c", e, t) for e in range(E1.sizes[n]) for t in range(D1.sizes[n]) if t != one[n]]
        + [("t", y) for y in range(E2.sizes[n])]
        for n in range(N + 1)
    ]

    def glue(n: int, e: int, t: int):
        return ("t", w.map.comps[n][e]) if t == one[n] else ("c", e, t)

    def face(n: int, i: int, k):
        if k[0] == "t":
            return ("t", E2.faces[n][i][k[1]])
        return glue(n - 1, E1.faces[n][i][k[1]], D1.faces[n][i][k[2]])

    def degen(n: int, i: int, k):
        if k[0] == "t":
            return ("t", E2.degens[n][i][k[1]])
        return glue(n + 1, E1.degens[n][i][k[1]], D1.degens[n][i][k[2]])

    C = SimplicialSet.build(N, levels, face, degen, name="Cyl")
    q_comps = tuple(
        tuple(w.map.comps[n][k[1]] if k[0] == "c" else k[1] for k in C.keys[n]) for n in range(N + 1)
    )
    q = SimplicialMap(C, E2, q_comps)
    cyl = SliceObject(compose(w.target.proj, q))
    m = SimplicialMap(E1, C, tuple(
        tuple(C.index(n, ("c", e, zero[n])) for e in range(E1.sizes[n])) for n in range(N + 1)
    ))
    return cyl, SliceMap(w.source, cyl, m), SliceMap(cyl, w.target, q)


@dataclass(frozen=True, eq=False)
class CaseAnalysis:
    """``kind`` is trivial-fibration, trivial-cofibration or factored."""

    kind: str
    report: RlpReport | None = None
    retraction: DeformationRetraction | None = None
    m: SliceMap | None = None
    q: SliceMap | None = None
    m_verdict: WeqVerdict | None = None
    q_report: RlpReport | None = None


def factor_weq(w: SliceMap, cfg: Config, verdict: WeqVerdict | None = None) -> CaseAnalysis:
    """Split a certified equivalence into the cases a lifting argument can use."""
    verdict = verdict if verdict is not None else is_weq(w, cfg)
    if not verdict.yes:
        raise InputError(f"factor_weq needs a certified equivalence, got {verdict.status}")
    tf = is_trivial_fibration(w.map, cfg)
    if tf.ok:
        return CaseAnalysis("trivial-fibration", report=tf)
    if w.is_mono():
        d = find_deformation_retraction(w, cfg)
        if isinstance(d, DeformationRetraction):
            return CaseAnalysis("trivial-cofibration", retraction=d)
    cyl, m, q = mapping_cylinder(w)
    q_rep = is_trivial_fibration(q.map, cfg)
    if not q_rep.ok:
        raise Uncertified(
            f"cylinder projection is not a certified trivial fibration: {q_rep}", "trivial-fibration(q)"
        )
    m_ver = _decide(m, cfg, reduce=True)
    if not m_ver.yes:
        raise Uncertified("cylinder inclusion is not a certified equivalence", "weq(m)")
    return CaseAnalysis("factored", m=m, q=q, m_verdict=m_ver, q_report=q_rep)
