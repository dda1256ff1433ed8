"""The internal hom of the slice category, computed simplex by simplex.

An n-simplex over ``b`` is a map ``u: b^*E1 -> b^*E2`` over ``Delta[n]``;
structure maps act by pulling ``u`` back along cosimplicial operators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from kanforge.config import Config
from kanforge.errors import BudgetExhausted, InputError
from kanforge.slice.objects import SliceObject
from kanforge.sscore import SearchStats, SimplicialMap, SimplicialSet, extensions, standard_simplex
from kanforge.sscore.generators import delete, repeat

Comps = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, eq=False)
class HomObject:
    """``Hom_B(E1, E2) -> B`` with each simplex decoded as ``(b, u)``."""

    carrier: SliceObject
    source: SliceObject
    target: SliceObject
    decode: tuple[tuple[tuple[int, Comps], ...], ...]

    def fiber_map(self, n: int, h: int) -> SimplicialMap:
        b, u = self.decode[n][h]
        P1 = self.source.over_simplex(n, b)
        P2 = self.target.over_simplex(n, b)
        return SimplicialMap(P1.total, P2.total, u)


def restrict_fiber_map(
    u: Comps,
    alpha: tuple[int, ...],
    n: int,
    src: SliceObject,
    tgt: SliceObject,
    src2: SliceObject,
    tgt2: SliceObject,
) -> Comps:
    """Pull ``u: src -> tgt`` over ``Delta[n]`` back along ``alpha: [m] -> [n]``
    to ``src2 -> tgt2`` over ``Delta[m]``."""
    N = src.total.max_dim
    Dn = standard_simplex(n, N)
    Dm = standard_simplex(len(alpha) - 1, N)
    S, T, S2, T2 = src.total, tgt.total, src2.total, tgt2.total
    out = []
    for k in range(N + 1):
        row = []
        uk = u[k]
        for beta_id, e in S2.keys[k]:
            beta = Dm.keys[k][beta_id]
            g = Dn.index(k, tuple(alpha[v] for v in beta))
            _, e2 = T.keys[k][uk[S.index(k, (g, e))]]
            row.append(T2.index(k, (beta_id, e2)))
        out.append(tuple(row))
    return tuple(out)


def build_from_fibers(
    base: SimplicialSet,
    elements: list[list[tuple[int, Comps]]],
    act: Callable[[int, int, tuple[int, ...], Comps], Comps],
    name: str,
) -> SimplicialSet:
    """Assemble a simplicial set over ``base`` from per-simplex element lists.

    ``act(n, b, alpha, data)`` returns the data of the restricted element over
    ``b . alpha``; it must land in the corresponding element list.
    """
    N = base.max_dim
    index = [{e: j for j, e in enumerate(lvl)} for lvl in elements]
    faces = [()]
    for n in range(1, N + 1):
        rows = []
        for i in range(n + 1):
            alpha = delete(tuple(range(n + 1)), i)
            row = []
            for b, data in elements[n]:
                row.append(index[n - 1][(base.faces[n][i][b], act(n, b, alpha, data))])
            rows.append(tuple(row))
        faces.append(tuple(rows))
    degens = []
    for n in range(N):
        rows = []
        for i in range(n + 1):
            alpha = repeat(tuple(range(n + 1)), i)
            row = []
            for b, data in elements[n]:
                row.append(index[n + 1][(base.degens[n][i][b], act(n, b, alpha, data))])
            rows.append(tuple(row))
        degens.append(tuple(rows))
    degens.append(())
    return SimplicialSet(
        N,
        tuple(len(lvl) for lvl in elements),
        tuple(faces),
        tuple(degens),
        tuple(tuple(lvl) for lvl in elements),
        name,
    )


def internal_hom(
    E1: SliceObject,
    E2: SliceObject,
    cfg: Config,
    keep: Callable[[int, int, SimplicialMap], bool] | None = None,
) -> HomObject:
    """``Hom_B(E1, E2)`` over the shared base ``B``.

    ``keep`` optionally filters simplices (by base level, base simplex and
    fiber map); it must select a simplicial subset. Raises
    :class:`BudgetExhausted` naming the level whose enumeration blew up.
    """
    B = E1.base
    if not B.same_structure(E2.base):
        raise InputError("internal hom needs a shared base")
    N = B.max_dim
    elements: list[list[tuple[int, Comps]]] = []
    spent = 0
    for n in range(N + 1):
        lvl: list[tuple[int, Comps]] = []
        for b in range(B.sizes[n]):
            P1 = E1.over_simplex(n, b)
            P2 = E2.over_simplex(n, b)
            stats = SearchStats()
            try:
                for u in extensions(
                    P1.total, P2.total, over=(P2.proj, P1.proj.comps),
                    budget=cfg.search_budget - spent, stats=stats,
                ):
                    if keep is None or keep(n, b, SimplicialMap(P1.total, P2.total, u)):
                        lvl.append((b, u))
            except BudgetExhausted as exc:
                raise BudgetExhausted(
                    f"internal hom: level {n} exceeds the search budget", spent + exc.nodes, stage=f"level {n}"
                ) from None
            spent += stats.nodes
        elements.append(lvl)

    def act(n: int, b: int, alpha: tuple[int, ...], u: Comps) -> Comps:
        b2 = B.apply_op(n, b, alpha)
        m = len(alpha) - 1
        return restrict_fiber_map(
            u, alpha, n,
            E1.over_simplex(n, b), E2.over_simplex(n, b),
            E1.over_simplex(m, b2), E2.over_simplex(m, b2),
        )

    H = build_from_fibers(B, elements, act, "Hom")
    proj = SimplicialMap(H, B, tuple(tuple(b for b, _ in lvl) for lvl in elements))
    return HomObject(SliceObject(proj), E1, E2, tuple(tuple(lvl) for lvl in elements))
