"""Products, pullbacks and coproducts, computed levelwise."""

from __future__ import annotations

from kanforge.errors import InputError
from kanforge.sscore.simplicial import SimplicialMap, SimplicialSet, check_bounds


def _pair_set(
    X: SimplicialSet, Y: SimplicialSet, pairs: list[list[tuple[int, int]]], name: str
) -> SimplicialSet:
    N = X.max_dim
    index = [{p: j for j, p in enumerate(level)} for level in pairs]
    faces = [()]
    for n in range(1, N + 1):
        fx, fy = X.faces[n], Y.faces[n]
        faces.append(tuple(
            tuple(index[n - 1][(fx[i][a], fy[i][b])] for a, b in pairs[n]) for i in range(n + 1)
        ))
    degens = []
    for n in range(N):
        sx, sy = X.degens[n], Y.degens[n]
        degens.append(tuple(
            tuple(index[n + 1][(sx[i][a], sy[i][b])] for a, b in pairs[n]) for i in range(n + 1)
        ))
    degens.append(())
    return SimplicialSet(
        N, tuple(len(p) for p in pairs), tuple(faces), tuple(degens),
        tuple(tuple(p) for p in pairs), name,
    )


def _projections(P: SimplicialSet, X: SimplicialSet, Y: SimplicialSet):
    p1 = SimplicialMap(P, X, tuple(tuple(a for a, _ in lvl) for lvl in P.keys))
    p2 = SimplicialMap(P, Y, tuple(tuple(b for _, b in lvl) for lvl in P.keys))
    return p1, p2


def product(X: SimplicialSet, Y: SimplicialSet) -> tuple[SimplicialSet, SimplicialMap, SimplicialMap]:
    """``X x Y`` with simplices ``(x, y)`` in lexicographic order."""
    check_bounds(X, Y)
    pairs = [[(a, b) for a in range(X.sizes[n]) for b in range(Y.sizes[n])] for n in range(X.max_dim + 1)]
    P = _pair_set(X, Y, pairs, f"({X.name or 'X'} x {Y.name or 'Y'})")
    return (P, *_projections(P, X, Y))


def pullback(f: SimplicialMap, g: SimplicialMap) -> tuple[SimplicialSet, SimplicialMap, SimplicialMap]:
    """Fiber product of ``f: X -> Z`` and ``g: Y -> Z``; simplices are pairs
    ``(x, y)`` with ``f(x) = g(y)``, lexicographic."""
    if not f.target.same_structure(g.target):
        raise InputError("pullback legs do not share a target")
    X, Y = f.source, g.source
    check_bounds(X, Y)
    pairs = []
    for n in range(X.max_dim + 1):
        over = g.fibers[n]
        pairs.append([(a, b) for a in range(X.sizes[n]) for b in over[f.comps[n][a]]])
    P = _pair_set(X, Y, pairs, "pullback")
    return (P, *_projections(P, X, Y))


def coproduct(*Xs: SimplicialSet) -> tuple[SimplicialSet, list[SimplicialMap]]:
    """Disjoint union with simplices ``(summand, id)``, summands in order."""
    if not Xs:
        raise InputError("coproduct needs at least one summand")
    N = check_bounds(*Xs)
    offsets = []
    for n in range(N + 1):
        acc, row = 0, []
        for X in Xs:
            row.append(acc)
            acc += X.sizes[n]
        offsets.append(row)
    sizes = tuple(sum(X.sizes[n] for X in Xs) for n in range(N + 1))
    faces = [()]
    for n in range(1, N + 1):
        faces.append(tuple(
            tuple(offsets[n - 1][j] + y for j, X in enumerate(Xs) for y in X.faces[n][i])
            for i in range(n + 1)
        ))
    degens = []
    for n in range(N):
        degens.append(tuple(
            tuple(offsets[n + 1][j] + y for j, X in enumerate(Xs) for y in X.degens[n][i])
            for i in range(n + 1)
        ))
    degens.append(())
    keys = tuple(tuple((j, x) for j, X in enumerate(Xs) for x in range(X.sizes[n])) for n in range(N + 1))
    C = SimplicialSet(N, sizes, tuple(faces), tuple(degens), keys, " + ".join(X.name or "X" for X in Xs))
    incls = [
        SimplicialMap(X, C, tuple(tuple(offsets[n][j] + x for x in range(X.sizes[n])) for n in range(N + 1)))
        for j, X in enumerate(Xs)
    ]
    return C, incls


def terminal_map(X: SimplicialSet) -> SimplicialMap:
    from kanforge.sscore.generators import point

    return SimplicialMap(X, point(X.max_dim), tuple((0,) * s for s in X.sizes))


def product_map(f: SimplicialMap, g: SimplicialMap, P: SimplicialSet, Q: SimplicialSet) -> SimplicialMap:
    """``f x g : P -> Q`` where P, Q are products built by :func:`product`."""
    comps = []
    for n in range(P.max_dim + 1):
        comps.append(tuple(Q.index(n, (f.comps[n][a], g.comps[n][b])) for a, b in P.keys[n]))
    return SimplicialMap(P, Q, tuple(comps))


def pairing(f: SimplicialMap, g: SimplicialMap, P: SimplicialSet) -> SimplicialMap:
    """``<f, g> : X -> P`` into a product or pullback built by this module."""
    comps = []
    for n in range(f.source.max_dim + 1):
        comps.append(tuple(P.index(n, (a, b)) for a, b in zip(f.comps[n], g.comps[n])))
    return SimplicialMap(f.source, P, tuple(comps))
