"""Minimal fibrations: factorization through a minimal subcomplex, and
trivialization over standard simplices and horns."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from kanforge.config import Config
from kanforge.errors import BudgetExhausted, InputError, InternalError
from kanforge.homotopy.retraction import (
    DeformationRetraction,
    constant_index,
    find_deformation_retraction,
    interval,
)
from kanforge.lifting import (
    Exhausted,
    LiftingProblem,
    Refuted,
    RlpReport,
    is_fibration,
    is_trivial_fibration,
    solve_lifting,
)
from kanforge.slice import SliceMap, SliceObject, pullback_along
from kanforge.sscore import (
    SimplicialMap,
    SimplicialSet,
    compose,
    identity,
    product,
    standard_simplex,
    subcomplex,
)

# -- homotopy rel boundary ---------------------------------------------------

_PRISMS: dict[tuple[int, int], tuple] = {}


def _prism(n: int, bound: int):
    """``Delta[n] x Delta[1]`` and its subcomplex ``Delta[n] x dDelta[1] u dDelta[n] x Delta[1]``."""
    hit = _PRISMS.get((n, bound))
    if hit is None:
        D, D1 = standard_simplex(n, bound), interval(bound)
        P, _, _ = product(D, D1)
        ends = [{constant_index(D1, m, 0), constant_index(D1, m, 1)} for m in range(bound + 1)]

        def keep(m: int, z: int) -> bool:
            g, t = P.keys[m][z]
            return t in ends[m] or len(set(D.keys[m][g])) < n + 1

        L, incl = subcomplex(P, keep)
        hit = (D, D1, P, L, incl)
        _PRISMS[(n, bound)] = hit
    return hit


def homotopic_rel_boundary(q: SimplicialMap, n: int, a: int, b: int, cfg: Config):
    """Search for a homotopy over the base from ``a`` to ``b`` fixing their
    common boundary. Returns a lifting outcome."""
    Y, X = q.source, q.target
    x = q.comps[n][a]
    D, D1, P, L, incl = _prism(n, Y.max_dim)
    one = [constant_index(D1, m, 1) for m in range(Y.max_dim + 1)]
    top = []
    for m in range(Y.max_dim + 1):
        row = []
        for g, t in L.keys[m]:
            src = b if t == one[m] else a
            row.append(Y.apply_op(n, src, D.keys[m][g]))
        top.append(tuple(row))
    bottom = tuple(
        tuple(X.apply_op(n, x, D.keys[m][g]) for g, _ in P.keys[m]) for m in range(Y.max_dim + 1)
    )
    pr = LiftingProblem(incl, q, SimplicialMap(L, Y, tuple(top)), SimplicialMap(P, X, bottom))
    return solve_lifting(pr, cfg)


# -- Quillen factorization ---------------------------------------------------


@dataclass(frozen=True)
class MinimalityWitness:
    """A refuted homotopy search between two simplices of the minimal part."""

    level: int
    first: int
    second: int
    nodes: int

    def to_dict(self) -> dict:
        return {"level": self.level, "first": self.first, "second": self.second, "nodes": self.nodes}


@dataclass(frozen=True, eq=False)
class MinimalFactorization:
    """``q = p . g`` with ``p`` minimal and ``g`` a (bounded) trivial fibration.

    The total of ``p`` is a simplicial subset of the total of ``q``;
    ``inclusion`` embeds it and ``g`` retracts onto it. Witness ids refer to
    the total of ``q``.
    """

    original: SliceObject
    g: SliceMap
    p: SliceObject
    inclusion: SimplicialMap
    g_report: RlpReport
    witnesses: tuple[MinimalityWitness, ...]
    retraction: DeformationRetraction = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "minimal_sizes": list(self.p.total.sizes),
            "minimal_nondegenerate": list(self.p.total.nondeg_counts()),
            "g_report": self.g_report.to_dict(),
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


def quillen_factorize(q: SliceObject, cfg: Config, precheck: RlpReport | None = None) -> MinimalFactorization:
    """Factor a fibration through a minimal one.

    Level by level, simplices whose faces already lie in the minimal part are
    grouped by base simplex and boundary; each is compared with the
    representatives chosen so far (degenerate ones first, then by id) and
    kept only if no homotopy rel boundary to an earlier one is found. The
    retraction onto the kept part comes from a deformation retraction over
    the base.
    """
    pre = precheck if precheck is not None else is_fibration(q.proj, cfg)
    if not pre.ok:
        raise InputError(f"quillen_factorize needs a fibration: {pre}")
    Y = q.total
    N = Y.max_dim
    nondeg = Y.nondeg
    kept: list[set[int]] = [set() for _ in range(N + 1)]
    witnesses: list[MinimalityWitness] = []

    def related(n: int, a: int, b: int) -> bool:
        out = homotopic_rel_boundary(q.proj, n, a, b, cfg)
        if isinstance(out, Exhausted):
            raise BudgetExhausted(
                f"homotopy search between simplices {a} and {b} at level {n} ran out of budget",
                out.nodes, stage="minimal representatives",
            )
        if isinstance(out, Refuted):
            witnesses.append(MinimalityWitness(n, a, b, out.nodes))
            return False
        return True

    for n in range(N + 1):
        if n > 0:
            kept[n] = {Y.degens[n - 1][i][z] for z in kept[n - 1] for i in range(n)}
        reps: dict[tuple, list[int]] = {}
        for y in sorted(kept[n]):
            key = (q.proj.comps[n][y], Y.boundary(n, y) if n else ())
            for r in reps.get(key, []):
                if related(n, r, y):
                    raise InternalError(f"distinct degenerate simplices {r}, {y} are homotopic rel boundary")
            reps.setdefault(key, []).append(y)
        for y in range(Y.sizes[n]):
            if not nondeg[n][y] or y in kept[n]:
                continue
            bd = Y.boundary(n, y) if n else ()
            if any(z not in kept[n - 1] for z in bd):
                continue
            key = (q.proj.comps[n][y], bd)
            group = reps.setdefault(key, [])
            if any(related(n, r, y) for r in group):
                continue
            group.append(y)
            kept[n].add(y)

    M, incl = subcomplex(Y, lambda n, y: y in kept[n], name="minimal")
    p = SliceObject(compose(q.proj, incl))
    w = SliceMap(p, q, incl)
    d = find_deformation_retraction(w, cfg)
    if isinstance(d, Exhausted):
        raise BudgetExhausted("retraction onto the minimal part ran out of budget", d.nodes, stage="retraction")
    if isinstance(d, Refuted):
        raise InternalError("no retraction onto the minimal part exists within the truncation")
    g_map = d.retraction()
    g = SliceMap(q, p, g_map)
    if g.violations():
        raise InternalError("retraction is not a map over the base")
    report = is_trivial_fibration(g_map, cfg)
    return MinimalFactorization(q, g, p, incl, report, tuple(witnesses), d)


def recheck_minimality(mf: MinimalFactorization, cfg: Config) -> list[str]:
    """Re-run every stored witness search and confirm each pair of distinct
    kept simplices with equal boundary over one base simplex has one."""
    q = mf.original.proj
    Y = q.source
    kept = [set(c) for c in mf.inclusion.comps]
    seen = {(w.level, w.first, w.second) for w in mf.witnesses}
    out = []
    for n in range(Y.max_dim + 1):
        groups: dict[tuple, list[int]] = {}
        for y in sorted(kept[n]):
            groups.setdefault((q.comps[n][y], Y.boundary(n, y) if n else ()), []).append(y)
        for members in groups.values():
            for i, a in enumerate(members):
                for b in members[i + 1:]:
                    if (n, a, b) not in seen and (n, b, a) not in seen:
                        out.append(f"no witness for level {n} pair ({a}, {b})")
    for w in mf.witnesses:
        if not isinstance(homotopic_rel_boundary(q, w.level, w.first, w.second, cfg), Refuted):
            out.append(f"witness at level {w.level} ({w.first}, {w.second}) is not a refutation")
    return out


# -- trivialization over contractible bases ----------------------------------

Op = Callable[[tuple, tuple], tuple]


def _base_map(X: SimplicialSet, fn: Callable[[tuple], tuple]) -> SimplicialMap:
    return SimplicialMap(X, X, tuple(
        tuple(X.index(n, fn(g)) for g in X.keys[n]) for n in range(X.max_dim + 1)
    ))


def _transport(
    p: SliceObject, h: Op, start: SliceObject, finish: SliceObject, k: int, cfg: Config, stage: str
) -> SimplicialMap:
    """Move ``start = f1^* p`` to ``finish = f0^* p`` along ``h`` from ``f0``
    to ``f1``, holding the part over vertex ``k`` fixed."""
    X, Y = p.base, p.total
    N = X.max_dim
    D1 = interval(N)
    Z = start.total
    ZI, _, _ = product(Z, D1)
    one = [constant_index(D1, n, 1) for n in range(N + 1)]
    zero = [constant_index(D1, n, 0) for n in range(N + 1)]
    at_k = [(k,) * (n + 1) for n in range(N + 1)]

    def keep(n: int, z: int) -> bool:
        c, t = ZI.keys[n][z]
        return t == one[n] or X.keys[n][Z.keys[n][c][0]] == at_k[n]

    L, incl = subcomplex(ZI, keep)
    top = SimplicialMap(L, Y, tuple(tuple(Z.keys[n][c][1] for c, _ in L.keys[n]) for n in range(N + 1)))
    bottom = SimplicialMap(ZI, X, tuple(
        tuple(X.index(n, h(X.keys[n][Z.keys[n][c][0]], D1.keys[n][t])) for c, t in ZI.keys[n])
        for n in range(N + 1)
    ))
    out = solve_lifting(LiftingProblem(incl, p.proj, top, bottom), cfg)
    if isinstance(out, Exhausted):
        raise BudgetExhausted(f"transport along {stage} ran out of budget", out.nodes, stage=stage)
    if isinstance(out, Refuted):
        raise InternalError(f"transport along {stage} has no lift within the truncation")
    diag = out.diagonal.comps
    T = finish.total
    comps = []
    for n in range(N + 1):
        comps.append(tuple(
            T.index(n, (Z.keys[n][c][0], diag[n][ZI.index(n, (c, zero[n]))])) for c in range(Z.sizes[n])
        ))
    return SimplicialMap(Z, T, tuple(comps))


@dataclass(frozen=True, eq=False)
class Trivialization:
    """``iso : Y -> F x X`` over ``X`` with ``F`` the fiber over the basepoint
    (a simplicial subset of ``Y``); product simplices are keyed ``(f, x)``."""

    iso: SliceMap
    inverse: SliceMap
    fiber: SimplicialSet
    fiber_inclusion: SimplicialMap
    product: SliceObject


def _fiber_over(p: SliceObject, v: int) -> tuple[SimplicialSet, SimplicialMap]:
    X = p.base
    const = [X.index(n, (v,) * (n + 1)) for n in range(X.max_dim + 1)]
    return subcomplex(p.total, lambda n, y: p.proj.comps[n][y] == const[n], name=f"fiber over {v}")


def minimal_trivialize(p: SliceObject | MinimalFactorization, x0: int, cfg: Config) -> Trivialization:
    """Trivialize a minimal fibration over ``Delta[n]`` or ``Lambda^k[n]``.

    The base is contracted in two steps through ``g |-> min(g, k)``, where
    ``k`` is the basepoint (simplex) or the horn vertex (horn); simplices are
    transported by lifting along each step with the fiber over ``k`` held
    fixed, and the result is adjusted so that it is the identity on the fiber
    over ``x0``.
    """
    if isinstance(p, MinimalFactorization):
        p = p.p
    X = p.base
    shape = X.shape or ()
    if shape[:1] == ("simplex",):
        k = x0
    elif shape[:1] == ("horn",):
        k = shape[2]
    else:
        raise InputError("trivialization needs a standard simplex or a horn as base")
    if (x0,) not in X._key_index[0]:
        raise InputError(f"basepoint {x0} is not a vertex of the base")
    N = X.max_dim

    def h1(g: tuple, t: tuple) -> tuple:
        return tuple(min(a, k) if s == 0 else a for a, s in zip(g, t))

    def h2(g: tuple, t: tuple) -> tuple:
        return tuple(min(a, k) if s == 0 else k for a, s in zip(g, t))

    r = _base_map(X, lambda g: tuple(min(a, k) for a in g))
    c = _base_map(X, lambda g: (k,) * len(g))
    idP = pullback_along(identity(X), p)
    rP = pullback_along(r, p)
    cP = pullback_along(c, p)
    psi1 = _transport(p, h1, idP, rP, k, cfg, "retraction homotopy")
    psi2 = _transport(p, h2, cP, rP, k, cfg, "contraction homotopy")
    if not (psi1.is_iso() and psi2.is_iso()):
        raise InternalError("transport is not an isomorphism; the fibration is not minimal")

    Y = p.total
    F, f_incl = _fiber_over(p, k)
    f_inv = f_incl.preimage_table()
    FX, _, pr_x = product(F, X)
    to_id = SimplicialMap(Y, idP.total, tuple(
        tuple(idP.total.index(n, (p.proj.comps[n][y], y)) for y in range(Y.sizes[n])) for n in range(N + 1)
    ))
    c_to_prod = SimplicialMap(cP.total, FX, tuple(
        tuple(FX.index(n, (f_inv[n][y], x)) for x, y in cP.total.keys[n]) for n in range(N + 1)
    ))
    phi = compose(c_to_prod, compose(psi2.inverse(), compose(psi1, to_id)))

    if x0 != k:
        F0, f0_incl = _fiber_over(p, x0)
        theta = SimplicialMap(F0, F, tuple(
            tuple(FX.keys[n][phi.comps[n][y]][0] for y in f0_incl.comps[n]) for n in range(N + 1)
        ))
        if not theta.is_iso():
            raise InternalError("fiber comparison is not an isomorphism")
        th_inv = theta.inverse()
        F0X, _, pr_x0 = product(F0, X)
        phi = SimplicialMap(Y, F0X, tuple(
            tuple(F0X.index(n, (th_inv.comps[n][FX.keys[n][z][0]], FX.keys[n][z][1])) for z in phi.comps[n])
            for n in range(N + 1)
        ))
        F, f_incl, FX, pr_x = F0, f0_incl, F0X, pr_x0

    target = SliceObject(pr_x)
    iso = SliceMap(p, target, phi)
    if iso.violations() or not phi.is_iso():
        raise InternalError("trivialization failed verification")
    inv = SliceMap(target, p, phi.inverse())
    for n in range(N + 1):
        for j, y in enumerate(f_incl.comps[n]):
            if FX.keys[n][phi.comps[n][y]][0] != j:
                raise InternalError("trivialization is not the identity on the base fiber")
    return Trivialization(iso, inv, F, f_incl, target)
