"""Filling horns in the classifier of well-ordered fibrations."""

from __future__ import annotations

from contextlib import contextmanager

from kanforge.config import Config
from kanforge.errors import InputError, InternalError, KanforgeError, Uncertified
from kanforge.homotopy import minimal_trivialize, quillen_factorize
from kanforge.slice import SliceObject, joyal_extend
from kanforge.sscore import SimplicialMap, compose, horn, product, standard_simplex
from kanforge.sscore.generators import delete
from kanforge.universe.classifier import (
    CERTIFIED,
    ClassifyingMap,
    UniverseSimplex,
    classify,
    in_U,
    reconstruct,
    simplex_of,
    universe_apply,
)
from kanforge.universe.wom import WellOrderedMorphism, check_cap, pullback_wom


@contextmanager
def stage(name: str):
    """Tag any library error raised inside with the stage it came from."""
    try:
        yield
    except KanforgeError as exc:
        if not getattr(exc, "stage_tagged", False):
            exc.stage = name
            exc.stage_tagged = True
            exc.args = (f"[{name}] {exc}",)
        raise


def extend_horn_in_U(h: ClassifyingMap, cfg: Config) -> UniverseSimplex:
    """Fill a horn of fibrations to a simplex of fibrations.

    Pipeline: reconstruct the map over the horn, factor it through a minimal
    fibration, trivialize that over the horn, embed it into ``F x Delta[n]``,
    extend the trivial-fibration part along the embedding, and compose. The
    fibers over horn simplices keep their given order; fibers over the two
    new simplices are ordered by construction id.
    """
    X = h.base
    shape = X.shape or ()
    if shape[:1] != ("horn",):
        raise InputError("extend_horn_in_U needs a classifying map on a horn")
    _, n, k = shape
    N = X.max_dim
    with stage("membership of the horn"):
        for m in range(N + 1):
            for x in X.nondegenerate(m):
                flag = in_U(h.assign[m][x], cfg)
                if flag != CERTIFIED:
                    raise InputError(f"horn simplex {x} at level {m} is not in U ({flag})")
    with stage("reconstruct"):
        q = reconstruct(h)
    with stage("minimal factorization"):
        mf = quillen_factorize(q.as_slice(), cfg)
    with stage("trivialize"):
        triv = minimal_trivialize(mf.p, k, cfg)
    D = standard_simplex(n, N)
    F = triv.fiber
    FD, _, pr_d = product(F, D)
    FX = triv.product.total
    j = compose(
        SimplicialMap(FX, FD, tuple(
            tuple(FD.index(m, (f, D.index(m, X.keys[m][x]))) for f, x in FX.keys[m]) for m in range(N + 1)
        )),
        triv.iso.map,
    )
    with stage("extend along the embedding"):
        ext = joyal_extend(j, SliceObject(mf.g.map), cfg, precheck=mf.g_report)
    q2 = compose(pr_d, ext.extension.proj)
    top = ext.square_top

    with stage("order"):
        fib = q2.fibers
        incl_keys = [{D.index(m, key): x for x, key in enumerate(X.keys[m])} for m in range(N + 1)]
        orders = []
        for m in range(N + 1):
            lvl = []
            for x in range(D.sizes[m]):
                xh = incl_keys[m].get(x)
                if xh is None:
                    lvl.append(fib[m][x])
                else:
                    old = tuple(top.comps[m][y] for y in q.orders[m][xh])
                    if set(old) != set(fib[m][x]):
                        raise InternalError(f"extension does not restrict to the horn over simplex {x}")
                    lvl.append(old)
            orders.append(tuple(lvl))
    with stage("cap"):
        check_cap(q2, cfg)
    u = simplex_of(WellOrderedMorphism(q2, tuple(orders)))
    with stage("membership of the filler"):
        flag = in_U(u, cfg)
        if flag != CERTIFIED:
            raise Uncertified(f"filler is not a certified fibration ({flag})", "in_U")
    with stage("faces"):
        ident = tuple(range(n + 1))
        for i in range(n + 1):
            if i == k:
                continue
            face = delete(ident, i)
            if universe_apply(face, u) != h.assign[n - 1][X.index(n - 1, face)]:
                raise InternalError(f"face {i} of the filler does not match the horn")
    return u


def horn_of(u: UniverseSimplex, k: int) -> ClassifyingMap:
    """Restrict a universe simplex to its horn ``Lambda^k[n]``."""
    _, incl = horn(u.n, k, u.data.base.max_dim)
    return classify(pullback_wom(incl, u.data))
