"""Standard simplices, horns, boundaries, and a few other small generators."""

from __future__ import annotations

from itertools import combinations_with_replacement, product as iproduct
from typing import Callable

from kanforge.config import Config
from kanforge.errors import InputError
from kanforge.sscore.simplicial import SimplicialMap, SimplicialSet

_SIMPLEX_CACHE: dict[tuple[int, int], SimplicialSet] = {}


def _bound(cfg: Config | int) -> int:
    return cfg if isinstance(cfg, int) else cfg.max_dim


def monotone_maps(m: int, n: int) -> list[tuple[int, ...]]:
    """All monotone maps ``[m] -> [n]`` as value tuples, lexicographically."""
    return list(combinations_with_replacement(range(n + 1), m + 1))


def delete(seq: tuple, i: int) -> tuple:
    return seq[:i] + seq[i + 1:]


def repeat(seq: tuple, i: int) -> tuple:
    return seq[: i + 1] + seq[i:]


def standard_simplex(n: int, cfg: Config | int) -> SimplicialSet:
    """``Delta[n]``: level m holds the monotone maps ``[m] -> [n]``.

    For ``n`` above the bound this is the truncation of ``Delta[n]`` (no top simplex).
    """
    N = _bound(cfg)
    if n < 0:
        raise InputError(f"Delta[{n}] has negative dimension")
    hit = _SIMPLEX_CACHE.get((n, N))
    if hit is not None:
        return hit
    X = SimplicialSet.build(
        N,
        [monotone_maps(m, n) for m in range(N + 1)],
        lambda _m, i, k: delete(k, i),
        lambda _m, i, k: repeat(k, i),
        name=f"Delta[{n}]",
        shape=("simplex", n),
    )
    _SIMPLEX_CACHE[(n, N)] = X
    return X


def subcomplex(
    X: SimplicialSet,
    keep: Callable[[int, int], bool],
    name: str = "",
    shape: tuple | None = None,
) -> tuple[SimplicialSet, SimplicialMap]:
    """The simplicial subset on simplices satisfying ``keep``, with its inclusion.

    Keys of the subobject are those of ``X``. Raises if the selection is not
    closed under faces and degeneracies.
    """
    chosen = [[x for x in range(X.sizes[n]) if keep(n, x)] for n in range(X.max_dim + 1)]
    pos = [{x: j for j, x in enumerate(c)} for c in chosen]
    faces = [()]
    for n in range(1, X.max_dim + 1):
        rows = []
        for i in range(n + 1):
            row = []
            for x in chosen[n]:
                y = X.faces[n][i][x]
                if y not in pos[n - 1]:
                    raise InputError(f"selection not closed under d_{i} at level {n}, simplex {x}")
                row.append(pos[n - 1][y])
            rows.append(tuple(row))
        faces.append(tuple(rows))
    degens = []
    for n in range(X.max_dim):
        rows = []
        for i in range(n + 1):
            row = []
            for x in chosen[n]:
                y = X.degens[n][i][x]
                if y not in pos[n + 1]:
                    raise InputError(f"selection not closed under s_{i} at level {n}, simplex {x}")
                row.append(pos[n + 1][y])
            rows.append(tuple(row))
        degens.append(tuple(rows))
    degens.append(())
    keys = tuple(tuple(X.key(n, x) for x in c) for n, c in enumerate(chosen))
    S = SimplicialSet(X.max_dim, tuple(len(c) for c in chosen), tuple(faces), tuple(degens), keys, name, shape)
    return S, SimplicialMap(S, X, tuple(tuple(c) for c in chosen))


def generated_subcomplex(
    X: SimplicialSet, generators: list[tuple[int, int]], name: str = ""
) -> tuple[SimplicialSet, SimplicialMap]:
    """Smallest simplicial subset containing the given ``(level, id)`` simplices."""
    marked = [set() for _ in range(X.max_dim + 1)]
    stack = list(generators)
    while stack:
        n, x = stack.pop()
        if x in marked[n]:
            continue
        marked[n].add(x)
        if n > 0:
            stack.extend((n - 1, X.faces[n][i][x]) for i in range(n + 1))
        if n < X.max_dim:
            stack.extend((n + 1, X.degens[n][i][x]) for i in range(n + 1))
    return subcomplex(X, lambda n, x: x in marked[n], name=name)


def horn(n: int, k: int, cfg: Config | int) -> tuple[SimplicialSet, SimplicialMap]:
    """``Lambda^k[n]`` inside ``Delta[n]``: every face except the k-th."""
    if n < 1 or not 0 <= k <= n:
        raise InputError(f"no horn Lambda^{k}[{n}]")
    D = standard_simplex(n, cfg)
    full = n + 1
    return subcomplex(
        D,
        lambda m, x: len(set(D.keys[m][x]) | {k}) < full,
        name=f"Lambda^{k}[{n}]",
        shape=("horn", n, k),
    )


def boundary(n: int, cfg: Config | int) -> tuple[SimplicialSet, SimplicialMap]:
    """``dDelta[n]`` inside ``Delta[n]``."""
    if n < 0:
        raise InputError("negative dimension")
    D = standard_simplex(n, cfg)
    return subcomplex(
        D, lambda m, x: len(set(D.keys[m][x])) < n + 1, name=f"dDelta[{n}]", shape=("boundary", n)
    )


def subcomplex_generator(kind: tuple, cfg: Config | int) -> tuple[SimplicialSet, SimplicialMap]:
    """``("horn", n, k)`` or ``("boundary", n)``."""
    if kind[0] == "horn":
        return horn(kind[1], kind[2], cfg)
    if kind[0] == "boundary":
        return boundary(kind[1], cfg)
    raise InputError(f"unknown generator kind {kind[0]!r}")


def discrete(k: int, cfg: Config | int) -> SimplicialSet:
    """``k . Delta[0]``; ``k = 0`` gives the empty simplicial set."""
    N = _bound(cfg)
    ident = tuple(range(k))
    return SimplicialSet(
        N,
        (k,) * (N + 1),
        ((),) + tuple((ident,) * (n + 1) for n in range(1, N + 1)),
        tuple((ident,) * (n + 1) for n in range(N)) + ((),),
        tuple(tuple((v,) * (n + 1) for v in range(k)) for n in range(N + 1)),
        name=f"{k}.Delta[0]" if k else "empty",
    )


def point(cfg: Config | int) -> SimplicialSet:
    return discrete(1, cfg)


def empty(cfg: Config | int) -> SimplicialSet:
    return discrete(0, cfg)


def codiscrete(k: int, cfg: Config | int) -> SimplicialSet:
    """Nerve of the contractible groupoid on ``k`` objects: all sequences."""
    N = _bound(cfg)
    return SimplicialSet.build(
        N,
        [list(iproduct(range(k), repeat=m + 1)) for m in range(N + 1)],
        lambda _m, i, s: delete(s, i),
        lambda _m, i, s: repeat(s, i),
        name=f"E[{k}]",
    )


def nerve(objects: int, arrows: dict, compose: dict, identities: dict, cfg: Config | int) -> SimplicialSet:
    """Truncated nerve of a finite category.

    ``arrows`` maps arrow names to ``(source, target)``; ``compose[(g, f)]`` is
    ``g . f``; ``identities[obj]`` names the identity arrow.
    """
    N = _bound(cfg)
    names = sorted(arrows)

    def chain_list(m: int) -> list[tuple]:
        if m == 0:
            return [(o,) for o in range(objects)]
        res: list[tuple] = [(a,) for a in names]
        for _ in range(m - 1):
            res = [c + (a,) for c in res for a in names if arrows[a][0] == arrows[c[-1]][1]]
        return res

    def face(m: int, i: int, c: tuple) -> tuple:
        if m == 1:
            return (arrows[c[0]][1],) if i == 0 else (arrows[c[0]][0],)
        if i == 0:
            return c[1:]
        if i == m:
            return c[:-1]
        return c[: i - 1] + (compose[(c[i], c[i - 1])],) + c[i + 1:]

    def degen(m: int, i: int, c: tuple) -> tuple:
        if m == 0:
            return (identities[c[0]],)
        obj = arrows[c[i - 1]][1] if i > 0 else arrows[c[0]][0]
        return c[:i] + (identities[obj],) + c[i:]

    return SimplicialSet.build(N, [chain_list(m) for m in range(N + 1)], face, degen, name="nerve")


def word_to_surjection(m: int, word: tuple[int, ...]) -> tuple[int, ...]:
    """The surjection ``[m] -> [m - len(word)]`` of the degeneracy word
    ``s_{w[0]} ... s_{w[-1]}`` (outermost first)."""
    out = []
    for j in range(m + 1):
        v = j
        for i in word:
            if v > i:
                v -= 1
        out.append(v)
    return tuple(out)


def ez_key(X: SimplicialSet, n: int, x: int) -> tuple[int, int, tuple[int, ...]]:
    """``(root_dim, root, sigma)`` with ``x = root . sigma`` and ``sigma`` surjective."""
    rd, r, w = X.ez[n][x]
    return rd, r, word_to_surjection(n, w)


def act_on_ez(X: SimplicialSet, key: tuple[int, int, tuple[int, ...]], alpha: tuple[int, ...]) -> tuple:
    """``(root . sigma) . alpha`` in normal form; ``alpha`` may have any length."""
    rd, r, sigma = key
    comp = tuple(sigma[a] for a in alpha)
    image = sorted(set(comp))
    if len(image) == rd + 1:
        return rd, r, comp
    y = X.apply_op(rd, r, tuple(image))
    rd2, r2, tau = ez_key(X, len(image) - 1, y)
    pos = {v: j for j, v in enumerate(image)}
    return rd2, r2, tuple(tau[pos[c]] for c in comp)


def retruncate(X: SimplicialSet, bound: int) -> SimplicialSet:
    """``X`` re-truncated at ``bound``: levels are cut off, or added as
    degenerate simplices only (the skeletal extension).

    Simplices are keyed by normal form ``(root_dim, root, sigma)``; ids on
    the levels shared with ``X`` are unchanged.
    """
    N = X.max_dim
    keys = []
    for m in range(bound + 1):
        if m <= N:
            keys.append([ez_key(X, m, x) for x in range(X.sizes[m])])
        else:
            keys.append([
                (rd, r, sig)
                for rd in range(N + 1)
                for r in X.nondegenerate(rd)
                for sig in monotone_maps(m, rd)
                if len(set(sig)) == rd + 1
            ])
    Y = SimplicialSet.build(
        bound, keys,
        lambda m, i, k: act_on_ez(X, k, delete(tuple(range(m + 1)), i)),
        lambda m, i, k: act_on_ez(X, k, repeat(tuple(range(m + 1)), i)),
        name=f"{X.name or 'X'}|{bound}",
    )
    return Y
