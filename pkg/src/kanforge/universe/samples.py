"""Seeded random instances: small bases, coverings, orders, trivial fibrations."""

from __future__ import annotations

import random
from itertools import permutations

from kanforge.sscore import (
    SimplicialMap,
    SimplicialSet,
    generated_subcomplex,
    horn,
    standard_simplex,
    subcomplex,
    yoneda,
)
from kanforge.universe.wom import WellOrderedMorphism


def random_base(rng: random.Random, bound: int, max_nondeg: int = 12, top: int = 3) -> SimplicialSet:
    """A nonempty simplicial subset of ``Delta[min(top, bound)]`` with at most
    ``max_nondeg`` nondegenerate simplices."""
    d = min(top, bound)
    D = standard_simplex(d, bound)
    gens = [(m, x) for m in range(d + 1) for x in D.nondegenerate(m)]
    while True:
        pick = rng.sample(gens, rng.randint(1, 3))
        X, _ = generated_subcomplex(D, pick, name="base")
        if sum(X.nondeg_counts()) <= max_nondeg:
            return X


def random_subobject(rng: random.Random, X: SimplicialSet) -> SimplicialMap:
    """Inclusion of a random (possibly empty) simplicial subset."""
    gens = [(m, x) for m in range(X.max_dim + 1) for x in X.nondegenerate(m)]
    pick = rng.sample(gens, rng.randint(0, min(2, len(gens))))
    if not pick:
        return subcomplex(X, lambda n, x: False, name="empty")[1]
    return generated_subcomplex(X, pick, name="sub")[1]


def _edge_perm(X: SimplicialSet, n: int, x: int, perms: dict[int, tuple[int, ...]]) -> tuple[int, ...]:
    """Transport along the edge from vertex 0 to vertex 1 of ``x``."""
    e = X.apply_op(n, x, (0, 1))
    return perms[e]


def covering(X: SimplicialSet, sizes: dict[int, int], perms: dict[int, tuple[int, ...]]) -> SimplicialMap:
    """The covering with fiber ``range(sizes[v])`` over vertex ``v`` and
    transport ``perms[e]`` along each edge; n-simplices are ``(x, a)`` with
    ``a`` a point over the first vertex of ``x``."""
    N = X.max_dim
    first = [[X.apply_op(n, x, (0,)) for x in range(X.sizes[n])] for n in range(N + 1)]
    keys = [[(x, a) for x in range(X.sizes[n]) for a in range(sizes[first[n][x]])] for n in range(N + 1)]

    def face(n: int, i: int, k: tuple) -> tuple:
        x, a = k
        if i == 0:
            a = _edge_perm(X, n, x, perms)[a]
        return (X.faces[n][i][x], a)

    Y = SimplicialSet.build(
        N, keys, face, lambda n, i, k: (X.degens[n][i][k[0]], k[1]), name="covering"
    )
    return SimplicialMap(Y, X, tuple(tuple(x for x, _ in ks) for ks in keys))


def random_covering(rng: random.Random, X: SimplicialSet, max_fiber: int = 3) -> SimplicialMap:
    """A random covering: edges inside 2-simplices carry permutations that
    compose (derived from vertex labellings), free edges carry any."""
    from kanforge.homotopy import pi0

    sizes: dict[int, int] = {}
    for comp in pi0(X):
        k = rng.randint(0, max_fiber)
        for v in comp:
            sizes[v] = k
    label = {v: tuple(rng.sample(range(sizes[v]), sizes[v])) for v in range(X.sizes[0])}
    in_triangle: set[int] = set()
    if X.max_dim >= 2:
        for t in X.nondegenerate(2):
            in_triangle.update(X.boundary(2, t))
    perms: dict[int, tuple[int, ...]] = {}
    for e in range(X.sizes[1]):
        a, b = X.faces[1][1][e], X.faces[1][0][e]
        k = sizes[a]
        if not X.nondeg[1][e]:
            perms[e] = tuple(range(k))
        elif e in in_triangle:
            inv_a = {c: i for i, c in enumerate(label[a])}
            perms[e] = tuple(label[b][inv_a[c]] for c in range(k))
        else:
            perms[e] = tuple(rng.sample(range(k), k))
    return covering(X, sizes, perms)


def random_order(rng: random.Random, f: SimplicialMap) -> WellOrderedMorphism:
    return WellOrderedMorphism(f, tuple(
        tuple(tuple(rng.sample(fib, len(fib))) for fib in lvl) for lvl in f.fibers
    ))


def duplicate_top(rng: random.Random, X: SimplicialSet, max_fiber: int = 3) -> SimplicialMap:
    """A map onto ``X`` that is bijective below the top level and has up to
    ``max_fiber`` copies of each nondegenerate top simplex: a trivial
    fibration within the truncation."""
    N = X.max_dim
    copies = {x: rng.randint(1, max_fiber) for x in X.nondegenerate(N)}
    keys = [[(x, 0) for x in range(X.sizes[n])] for n in range(N)]
    keys.append([(x, c) for x in range(X.sizes[N]) for c in range(copies.get(x, 1))])
    Y = SimplicialSet.build(
        N, keys,
        lambda n, i, k: (X.faces[n][i][k[0]], 0),
        lambda n, i, k: (X.degens[n][i][k[0]], 0),
        name="duplicated",
    )
    return SimplicialMap(Y, X, tuple(tuple(x for x, _ in ks) for ks in keys))


def random_base_change(rng: random.Random, X: SimplicialSet) -> SimplicialMap:
    """A random map into ``X``: a simplex, a subobject inclusion, or a horn
    mapped in through one of its extensions."""
    kind = rng.randrange(3)
    if kind == 0:
        n = rng.randrange(X.max_dim + 1)
        return yoneda(X, n, rng.randrange(X.sizes[n]))
    if kind == 1:
        return random_subobject(rng, X)
    n = rng.randint(1, min(2, X.max_dim))
    k = rng.randint(0, n)
    _, incl = horn(n, k, X.max_dim)
    y = yoneda(X, n, rng.randrange(X.sizes[n]))
    return SimplicialMap(incl.source, X, tuple(
        tuple(y.comps[m][g] for g in incl.comps[m]) for m in range(X.max_dim + 1)
    ))


def permutations_of(k: int) -> list[tuple[int, ...]]:
    return list(permutations(range(k)))
