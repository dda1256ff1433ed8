"""Backtracking search for simplicial maps extending a partial assignment.

A map out of a simplicial set is determined by the images of its
nondegenerate simplices, subject only to face compatibility. The search
assigns those images in increasing dimension, then simplex id, trying target
simplices in id order. Candidates for a simplex are exactly the target
simplices whose boundary equals the already-determined image of its boundary,
so every complete assignment is a simplicial map.

In first-solution mode the search uses conflict-directed backjumping: a dead
end is blamed on the variables that determined the failing simplex's boundary.
This prunes only provably fruitless subtrees, so exhaustion is still a proof
that no solution exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Container, Iterator, Sequence

from kanforge.errors import BudgetExhausted, InputError
from kanforge.sscore.simplicial import SimplicialMap, SimplicialSet

Comps = tuple[tuple[int, ...], ...]


@dataclass
class SearchStats:
    nodes: int = 0
    variables: int = 0
    solutions: int = 0
    exhausted: bool = False


def extensions(
    source: SimplicialSet,
    target: SimplicialSet,
    fixed: Sequence[Sequence[int | None]] | None = None,
    *,
    over: tuple[SimplicialMap, Sequence[Sequence[int]]] | None = None,
    allowed: Callable[[int, int], Container[int] | None] | None = None,
    budget: int = 10**6,
    stats: SearchStats | None = None,
    first_only: bool = False,
) -> Iterator[Comps]:
    """Yield every simplicial map ``source -> target`` agreeing with ``fixed``.

    ``fixed[n][x]`` pins the image of a simplex (None leaves it free); pinned
    simplices must form a simplicial subset on which the assignment is already
    simplicial. ``over = (p, bottom)`` restricts to maps ``h`` with
    ``p . h = bottom``. ``allowed(n, x)`` may return a container of admissible
    images for a free nondegenerate simplex. Raises :class:`BudgetExhausted`
    when more than ``budget`` candidate assignments are tried.
    """
    if source.max_dim != target.max_dim:
        raise InputError(f"dimension bounds differ: {source.max_dim} vs {target.max_dim}")
    stats = stats if stats is not None else SearchStats()
    N = source.max_dim
    img: list[list[int | None]] = (
        [list(lvl) for lvl in fixed] if fixed is not None else [[None] * s for s in source.sizes]
    )
    ez = source.ez
    nondeg = source.nondeg
    p_comps = over[0].comps if over is not None else None
    bottom = over[1] if over is not None else None

    variables: list[tuple[int, int]] = [
        (n, x) for n in range(N + 1) for x in range(source.sizes[n]) if nondeg[n][x] and img[n][x] is None
    ]
    var_index = {v: j for j, v in enumerate(variables)}
    stats.variables = len(variables)

    # For every variable: its face simplices as (root_dim, root, word, root_var or -1).
    face_specs: list[list[tuple[int, int, tuple[int, ...], int]]] = []
    parents: list[frozenset[int]] = []
    for n, x in variables:
        specs = []
        par = set()
        if n > 0:
            for i in range(n + 1):
                z = source.faces[n][i][x]
                if img[n - 1][z] is not None:
                    specs.append((n - 1, z, (), -1))
                    continue
                rd, r, w = ez[n - 1][z]
                rv = var_index.get((rd, r), -1)
                if rv >= 0:
                    par.add(rv)
                specs.append((rd, r, w, rv))
        face_specs.append(specs)
        parents.append(frozenset(par))

    degens = target.degens
    face_index = target.face_index
    vertex_pool = tuple(range(target.sizes[0]))
    p_fibers = over[0].fibers if over is not None else None

    def image_of(rd: int, r: int, w: tuple[int, ...]) -> int:
        y = img[rd][r]
        d = rd
        for i in reversed(w):
            y = degens[d][i][y]
            d += 1
        return y

    def candidates(j: int) -> list[int]:
        n, x = variables[j]
        if n == 0:
            pool = p_fibers[0][bottom[0][x]] if over is not None else vertex_pool
        else:
            key = tuple(image_of(rd, r, w) for rd, r, w, _ in face_specs[j])
            pool = face_index[n].get(key, ())
            if over is not None:
                b = bottom[n][x]
                pool = [y for y in pool if p_comps[n][y] == b]
        if allowed is not None:
            ok = allowed(n, x)
            if ok is not None:
                pool = [y for y in pool if y in ok]
        return list(pool)

    def full_map() -> Comps:
        out = []
        for n in range(N + 1):
            row = []
            for z in range(source.sizes[n]):
                y = img[n][z]
                if y is None:
                    rd, r, w = ez[n][z]
                    y = image_of(rd, r, w)
                row.append(y)
            out.append(tuple(row))
        return tuple(out)

    V = len(variables)
    if V == 0:
        stats.solutions += 1
        yield full_map()
        stats.exhausted = True
        return

    cand: list[list[int]] = [[] for _ in range(V)]
    pos = [0] * V
    conf: list[set[int]] = [set() for _ in range(V)]
    k = 0
    cand[0] = candidates(0)
    conf[0] = set(parents[0])
    while k >= 0:
        n, x = variables[k]
        if pos[k] < len(cand[k]):
            stats.nodes += 1
            if stats.nodes > budget:
                raise BudgetExhausted(f"search budget of {budget} nodes exhausted", stats.nodes)
            img[n][x] = cand[k][pos[k]]
            pos[k] += 1
            if k + 1 == V:
                stats.solutions += 1
                yield full_map()
                if first_only:
                    return
                continue
            k += 1
            cand[k] = candidates(k)
            pos[k] = 0
            conf[k] = set(parents[k])
            continue
        img[n][x] = None
        if first_only:
            if not conf[k]:
                break
            h = max(conf[k])
            conf[h] |= conf[k] - {h}
            for j in range(h + 1, k):
                jn, jx = variables[j]
                img[jn][jx] = None
            k = h
        else:
            k -= 1
    stats.exhausted = True


def first_extension(*args, **kwargs) -> Comps | None:
    """The first extension in search order, or None after an exhaustive search."""
    kwargs["first_only"] = True
    for sol in extensions(*args, **kwargs):
        return sol
    return None
