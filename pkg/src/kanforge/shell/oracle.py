"""Brute-force reference implementations.

Everything here is deliberately naive and shares nothing with the library
beyond the storage classes: no search engine, no generators, no limits.
Each function enumerates a definition directly, so agreement with the
library is evidence for both.
"""

from __future__ import annotations

from itertools import product as iproduct
from typing import Iterator

from kanforge.errors import BudgetExhausted, InputError
from kanforge.sscore.simplicial import SimplicialMap, SimplicialSet

Comps = tuple[tuple[int, ...], ...]


def _monotone(m: int, n: int) -> list[tuple[int, ...]]:
    return [t for t in iproduct(range(n + 1), repeat=m + 1) if all(a <= b for a, b in zip(t, t[1:]))]


def simplex_level_sizes(n: int, bound: int) -> tuple[int, ...]:
    """Level sizes of ``Delta[n]`` by listing monotone sequences."""
    return tuple(len(_monotone(m, n)) for m in range(bound + 1))


def simplex_nondeg_counts(n: int) -> tuple[int, ...]:
    """Strictly increasing sequences in ``[n]`` of each length."""
    return tuple(
        sum(1 for t in iproduct(range(n + 1), repeat=m + 1) if all(a < b for a, b in zip(t, t[1:])))
        for m in range(n + 1)
    )


def degeneracy_normal_form(word: tuple[int, ...]) -> tuple[int, ...]:
    """Sort ``s_{w[0]} ... s_{w[-1]}`` into strictly decreasing indices using
    ``s_i s_j = s_{j+1} s_i`` for ``i <= j`` (bubble sort on the identities)."""
    w = list(word)
    changed = True
    while changed:
        changed = False
        for a in range(len(w) - 1):
            i, j = w[a], w[a + 1]
            if i <= j:
                w[a], w[a + 1] = j + 1, i
                changed = True
    return tuple(w)


# -- maps ---------------------------------------------------------------


def all_maps(X: SimplicialSet, Y: SimplicialSet, limit: int = 10**6) -> Iterator[Comps]:
    """Every simplicial map ``X -> Y``: a full assignment per level, filtered
    by every face and degeneracy equation."""
    if X.max_dim != Y.max_dim:
        raise InputError("dimension bounds differ")
    N = X.max_dim
    tried = [0]

    def levels(n: int, acc: list[tuple[int, ...]]) -> Iterator[Comps]:
        if n > N:
            yield tuple(acc)
            return
        pools = []
        for x in range(X.sizes[n]):
            pool = []
            for y in range(Y.sizes[n]):
                if n > 0 and any(Y.faces[n][i][y] != acc[n - 1][X.faces[n][i][x]] for i in range(n + 1)):
                    continue
                pool.append(y)
            pools.append(pool)
        for choice in iproduct(*pools):
            tried[0] += 1
            if tried[0] > limit:
                raise BudgetExhausted("oracle map enumeration over budget", tried[0])
            if n > 0 and any(
                choice[X.degens[n - 1][i][z]] != Y.degens[n - 1][i][acc[n - 1][z]]
                for z in range(X.sizes[n - 1])
                for i in range(n)
            ):
                continue
            yield from levels(n + 1, acc + [tuple(choice)])

    yield from levels(0, [])


def count_maps(X: SimplicialSet, Y: SimplicialSet) -> int:
    return sum(1 for _ in all_maps(X, Y))


def maps_over(p: SimplicialMap, q: SimplicialMap) -> list[Comps]:
    """Maps ``h`` with ``q . h = p`` for ``p : X -> B`` and ``q : Y -> B``."""
    return [
        h for h in all_maps(p.source, q.source)
        if all(q.comps[n][h[n][x]] == p.comps[n][x] for n in range(len(h)) for x in range(len(h[n])))
    ]


def hom_vertices(p: SimplicialMap, q: SimplicialMap) -> int:
    """Vertices of the internal hom over ``Delta[0]``-bases: maps over the base."""
    return len(maps_over(p, q))


# -- connectivity -------------------------------------------------------


def components(X: SimplicialSet) -> int:
    """Number of path components by depth-first search along edges."""
    if X.sizes[0] == 0:
        return 0
    adj: dict[int, set[int]] = {v: set() for v in range(X.sizes[0])}
    if X.max_dim >= 1:
        for e in range(X.sizes[1]):
            a, b = X.faces[1][1][e], X.faces[1][0][e]
            adj[a].add(b)
            adj[b].add(a)
    seen: set[int] = set()
    count = 0
    for v in adj:
        if v in seen:
            continue
        count += 1
        stack = [v]
        while stack:
            u = stack.pop()
            if u not in seen:
                seen.add(u)
                stack.extend(adj[u] - seen)
    return count


# -- lifting squares ----------------------------------------------------


def _compatible(Y: SimplicialSet, n: int, faces: dict[int, int]) -> bool:
    if n < 2:
        return True
    ks = sorted(faces)
    return all(
        Y.faces[n - 1][i][faces[j]] == Y.faces[n - 1][j - 1][faces[i]]
        for a, i in enumerate(ks) for j in ks[a + 1:]
    )


def unfillable_squares(p: SimplicialMap, n: int, missing: int | None) -> list[tuple[int, dict[int, int]]]:
    """All squares from ``Lambda^missing[n]`` (or ``dDelta[n]`` when
    ``missing`` is None) against ``p`` with no diagonal.

    A square is a bottom simplex ``b`` of ``X_n`` and a compatible family of
    faces ``y_i`` in ``Y_{n-1}`` over ``d_i b``; a diagonal is an n-simplex
    over ``b`` with exactly those faces.
    """
    Y, X = p.source, p.target
    bad = []
    if n == 0:
        if missing is not None:
            raise InputError("no horns in dimension 0")
        for b in range(X.sizes[0]):
            if not any(p.comps[0][y] == b for y in range(Y.sizes[0])):
                bad.append((b, {}))
        return bad
    idx = [i for i in range(n + 1) if i != missing]
    for b in range(X.sizes[n]):
        pools = [[y for y in range(Y.sizes[n - 1]) if p.comps[n - 1][y] == X.faces[n][i][b]] for i in idx]
        for ys in iproduct(*pools):
            fam = dict(zip(idx, ys))
            if not _compatible(Y, n, fam):
                continue
            if not any(
                p.comps[n][y] == b and all(Y.faces[n][i][y] == fam[i] for i in idx) for y in range(Y.sizes[n])
            ):
                bad.append((b, fam))
    return bad


def horn_failures(p: SimplicialMap, up_to: int | None = None) -> list[tuple[int, int]]:
    """``(n, k)`` of every horn with an unfillable square."""
    top = p.target.max_dim if up_to is None else up_to
    return [(n, k) for n in range(1, top + 1) for k in range(n + 1) if unfillable_squares(p, n, k)]


def boundary_failures(p: SimplicialMap, up_to: int | None = None) -> list[int]:
    top = p.target.max_dim if up_to is None else up_to
    return [n for n in range(top + 1) if unfillable_squares(p, n, None)]


def terminal(X: SimplicialSet) -> SimplicialMap:
    N = X.max_dim
    pt = SimplicialSet(N, (1,) * (N + 1), ((),) + tuple(((0,),) * (n + 1) for n in range(1, N + 1)),
                       tuple(((0,),) * (n + 1) for n in range(N)) + ((),))
    return SimplicialMap(X, pt, tuple((0,) * s for s in X.sizes))


# -- pushforward by sections -------------------------------------------


def _op(X: SimplicialSet, n: int, x: int, alpha: tuple[int, ...]) -> int:
    """``x . alpha`` by factoring ``alpha`` into faces then degeneracies."""
    image = sorted(set(alpha))
    dim = n
    for i in range(n, -1, -1):
        if i not in image:
            x = X.faces[dim][i][x]
            dim -= 1
    for j in range(len(alpha) - 1):
        if alpha[j] == alpha[j + 1]:
            x = X.degens[dim][j][x]
            dim += 1
    return x


def sections(i: SimplicialMap, p: SimplicialMap, n: int, x: int) -> list[dict]:
    """All sections of ``p`` over the part of ``Delta[n]`` that ``x`` sends
    into the image of ``i``: families ``s[gamma]`` compatible with faces and
    degeneracies."""
    B = i.target
    N = B.max_dim
    inv = [{a: k for k, a in enumerate(i.comps[m])} for m in range(N + 1)]
    E = p.source
    ops = [[g for g in _monotone(m, n) if _op(B, n, x, g) in inv[m]] for m in range(N + 1)]
    out: list[dict] = [{}]
    for m in range(N + 1):
        nxt = []
        for s in out:
            pools = []
            for g in ops[m]:
                a = inv[m][_op(B, n, x, g)]
                pools.append([
                    e for e in range(E.sizes[m])
                    if p.comps[m][e] == a
                    and (m == 0 or all(
                        E.faces[m][k][e] == s[g[:k] + g[k + 1:]] for k in range(m + 1)
                    ))
                ])
            for choice in iproduct(*pools):
                t = dict(s)
                t.update(zip(ops[m], choice))
                if m > 0 and any(
                    t[g[:k + 1] + g[k:]] != E.degens[m - 1][k][s[g]]
                    for g in ops[m - 1] for k in range(m)
                ):
                    continue
                nxt.append(t)
        out = nxt
    return out


def pushforward_sizes(i: SimplicialMap, p: SimplicialMap) -> tuple[int, ...]:
    B = i.target
    return tuple(sum(len(sections(i, p, n, x)) for x in range(B.sizes[n])) for n in range(B.max_dim + 1))


def pushforward_object(i: SimplicialMap, p: SimplicialMap) -> SimplicialMap:
    """``i_* p`` as an explicit object over ``B``."""
    B = i.target
    N = B.max_dim
    keys = []
    for n in range(N + 1):
        row = []
        for x in range(B.sizes[n]):
            for s in sections(i, p, n, x):
                row.append((x, tuple(sorted(s.items()))))
        keys.append(row)

    def act(n: int, key: tuple, alpha: tuple[int, ...]) -> tuple:
        x, s = key
        d = dict(s)
        m = len(alpha) - 1
        x2 = _op(B, n, x, alpha)
        return (x2, tuple(sorted((g, d[tuple(alpha[j] for j in g)]) for g in _all_ops(N, m) if tuple(alpha[j] for j in g) in d)))

    T = SimplicialSet.build(
        N, keys,
        lambda n, i_, k: act(n, k, tuple(range(i_)) + tuple(range(i_ + 1, n + 1))),
        lambda n, i_, k: act(n, k, tuple(range(i_ + 1)) + tuple(range(i_, n + 1))),
        name="oracle pushforward",
    )
    return SimplicialMap(T, B, tuple(tuple(x for x, _ in ks) for ks in keys))


def _all_ops(N: int, m: int) -> list[tuple[int, ...]]:
    return [g for k in range(N + 1) for g in _monotone(k, m)]


def pullback_along(t: SimplicialMap, p: SimplicialMap) -> SimplicialMap:
    X2, E = t.source, p.source
    N = X2.max_dim
    keys = [[(a, e) for a in range(X2.sizes[n]) for e in range(E.sizes[n]) if t.comps[n][a] == p.comps[n][e]]
            for n in range(N + 1)]
    P = SimplicialSet.build(
        N, keys,
        lambda n, i, k: (X2.faces[n][i][k[0]], E.faces[n][i][k[1]]),
        lambda n, i, k: (X2.degens[n][i][k[0]], E.degens[n][i][k[1]]),
    )
    return SimplicialMap(P, X2, tuple(tuple(a for a, _ in ks) for ks in keys))


def adjunction_counts(i: SimplicialMap, p: SimplicialMap, q: SimplicialMap) -> tuple[int, int]:
    """``|Hom_B(q, i_* p)|`` and ``|Hom_A(i^* q, p)|``."""
    left = len(maps_over(q, pushforward_object(i, p)))
    right = len(maps_over(pullback_along(i, q), p))
    return left, right


# -- discrete fibrations -------------------------------------------------


def _fiber_sizes_discrete(p: SimplicialMap) -> dict[int, int]:
    X, E = p.target, p.source
    if any(c for c in E.nondeg_counts()[1:]) or any(c for c in X.nondeg_counts()[1:]):
        raise InputError("oracle handles discrete bases and fibers only")
    return {b: sum(1 for e in range(E.sizes[0]) if p.comps[0][e] == b) for b in range(X.sizes[0])}


def eq_vertices_discrete(p: SimplicialMap, q: SimplicialMap) -> int:
    """Fiberwise bijections between two discrete objects over a discrete base."""
    a, b = _fiber_sizes_discrete(p), _fiber_sizes_discrete(q)
    total = 1
    for v in a:
        if a[v] != b[v]:
            return 0
        for k in range(2, a[v] + 1):
            total *= k
    return total


def univalent_discrete(p: SimplicialMap) -> bool:
    """Over a discrete base with discrete fibers, ``Eq`` is discrete with the
    bijections between fibers as vertices, so the diagonal is an equivalence
    iff every fiber has a single automorphism and distinct fibers differ."""
    sizes = _fiber_sizes_discrete(p)
    if any(s > 1 for s in sizes.values()):
        return False
    vals = list(sizes.values())
    return all(vals[x] != vals[y] for x in range(len(vals)) for y in range(x + 1, len(vals)))


def pp_level_cap1_over_point(n: int, bound: int, total_empty: bool) -> int:
    """Pairs ``(g, w)`` at cap 1 over ``Delta[n] x Delta[0]`` for ``E`` empty or a point.

    With fibers of size at most 1, ``g`` is a simplicial subset of
    ``Delta[n]`` (enumerated as face-closed sets of nondegenerate
    simplices); it must pass the exhaustive horn check. A map
    ``w`` over ``Delta[n]`` from ``Delta[n] x E`` exists only into a subset
    containing the image; such subsets are empty or contractible, so ``w``
    is an equivalence iff it matches component counts.
    """
    simplices = [t for m in range(n + 1) for t in _monotone(m, n) if len(set(t)) == m + 1]
    count = 0
    for mask in range(1 << len(simplices)):
        keep = {simplices[j] for j in range(len(simplices)) if mask >> j & 1}
        if any(len(t) > 1 and any(t[:i] + t[i + 1:] not in keep for i in range(len(t))) for t in keep):
            continue
        levels = [[g for g in _monotone(m, n) if tuple(sorted(set(g))) in keep] for m in range(bound + 1)]
        idx = [{g: j for j, g in enumerate(lv)} for lv in levels]
        D = [_monotone(m, n) for m in range(bound + 1)]
        didx = [{g: j for j, g in enumerate(lv)} for lv in D]
        Y = SimplicialSet(
            bound, tuple(len(lv) for lv in levels),
            ((),) + tuple(tuple(tuple(idx[m - 1][g[:i] + g[i + 1:]] for g in levels[m]) for i in range(m + 1))
                          for m in range(1, bound + 1)),
            tuple(tuple(tuple(idx[m + 1][g[:i + 1] + g[i:]] for g in levels[m]) for i in range(m + 1))
                  for m in range(bound)) + ((),),
        )
        Dn = SimplicialSet(
            bound, tuple(len(lv) for lv in D),
            ((),) + tuple(tuple(tuple(didx[m - 1][g[:i] + g[i + 1:]] for g in D[m]) for i in range(m + 1))
                          for m in range(1, bound + 1)),
            tuple(tuple(tuple(didx[m + 1][g[:i + 1] + g[i:]] for g in D[m]) for i in range(m + 1))
                  for m in range(bound)) + ((),),
        )
        g = SimplicialMap(Y, Dn, tuple(tuple(didx[m][t] for t in levels[m]) for m in range(bound + 1)))
        if horn_failures(g):
            continue
        if total_empty:
            count += components(Y) == 0
        else:
            full = all(len(levels[m]) == len(D[m]) for m in range(bound + 1))
            count += full and components(Y) == 1
    return count
