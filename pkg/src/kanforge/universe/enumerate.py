"""Enumeration of all small well-ordered fibrations over a finite base.

Totals are grown level by level. At level m the degenerate simplices are
forced by level m - 1; over each base simplex one then chooses new
nondegenerate simplices (each given by a compatible boundary) and a well
order of the whole fiber. Horn filling at level m only involves the fiber
over the target simplex, so each fiber choice is pruned on its own.
"""

from __future__ import annotations

from itertools import combinations_with_replacement, permutations, product as iproduct
from typing import Iterator

from kanforge.config import Config
from kanforge.errors import BudgetExhausted
from kanforge.lifting import is_fibration
from kanforge.sscore import SimplicialMap, SimplicialSet
from kanforge.sscore.generators import delete
from kanforge.universe.wom import CanonicalWOM, WellOrderedMorphism, canonicalize

Key = tuple[int, int, tuple[int, ...]]


class _Level:
    __slots__ = ("keys", "base", "faces", "index", "fibers")

    def __init__(self) -> None:
        self.keys: list[Key] = []
        self.base: list[int] = []
        self.faces: list[tuple[int, ...]] = []
        self.index: dict[Key, int] = {}
        self.fibers: dict[int, tuple[int, ...]] = {}

    def add(self, key: Key, z: int, faces: tuple[int, ...]) -> int:
        j = len(self.keys)
        self.keys.append(key)
        self.base.append(z)
        self.faces.append(faces)
        self.index[key] = j
        return j


def _sigma_i(m: int, i: int) -> tuple[int, ...]:
    return tuple(j if j <= i else j - 1 for j in range(m + 1))


def _resolve(levels: list[_Level], key: Key, alpha: tuple[int, ...]) -> int:
    """Id of ``(root . sigma) . alpha`` in the level ``len(alpha) - 1``."""
    rd, r, sigma = key
    comp = tuple(sigma[a] for a in alpha)
    image = sorted(set(comp))
    if len(image) < rd + 1:
        y, dim = r, rd
        for i in range(rd, -1, -1):
            if i not in image:
                y = levels[dim].faces[y][i]
                dim -= 1
        rd, r, tau = levels[dim].keys[y]
        pos = {v: j for j, v in enumerate(image)}
        comp = tuple(tau[pos[c]] for c in comp)
    return levels[len(alpha) - 1].index[(rd, r, comp)]


def _compatible(levels: list[_Level], m: int, given: dict[int, int]) -> bool:
    """Faces ``given[i]`` (level m - 1) satisfy ``d_i y_j = d_{j-1} y_i``."""
    if m < 2:
        return True
    f = levels[m - 1].faces
    idx = sorted(given)
    for a, i in enumerate(idx):
        for j in idx[a + 1:]:
            if f[given[j]][i] != f[given[i]][j - 1]:
                return False
    return True


def _fiber_choices(
    levels: list[_Level], forced_lvl: _Level, X: SimplicialSet, m: int, z: int, forced: list[int], cap: int
) -> list[tuple]:
    """Admissible fibers over ``z``: ordered tuples of forced ids and new
    boundary face_sets, horn-fillable at level m."""
    if len(forced) > cap:
        return []
    if m == 0:
        face_sets: list[tuple[int, ...]] = [()]
    else:
        pools = [levels[m - 1].fibers.get(X.faces[m][i][z], ()) for i in range(m + 1)]
        face_sets = [s for s in iproduct(*pools) if _compatible(levels, m, dict(enumerate(s)))]
    out = []
    for extra in range(cap - len(forced) + 1):
        for new in combinations_with_replacement(face_sets, extra):
            tokens = [("f", y) for y in forced] + [("n", s) for s in new]
            for seq in sorted(set(permutations(tokens))):
                if m == 0 or _fillable(levels, forced_lvl, X, m, z, seq):
                    out.append(seq)
    return out


def _fillable(levels: list[_Level], forced_lvl: _Level, X: SimplicialSet, m: int, z: int, seq: tuple) -> bool:
    """Every horn over ``z`` with faces in level m - 1 has a filler in ``seq``."""
    bounds = [forced_lvl.faces[t[1]] if t[0] == "f" else t[1] for t in seq]
    pools = [levels[m - 1].fibers.get(X.faces[m][i][z], ()) for i in range(m + 1)]
    for k in range(m + 1):
        others = [i for i in range(m + 1) if i != k]
        have = {tuple(b[i] for i in others) for b in bounds}
        for s in iproduct(*(pools[i] for i in others)):
            if s in have:
                continue
            if _compatible(levels, m, dict(zip(others, s))):
                return False
    return True


def small_fibrations(
    X: SimplicialSet, cfg: Config, certify: bool = True
) -> Iterator[CanonicalWOM]:
    """Every canonical well-ordered fibration over ``X`` with fibers at most
    ``cfg.fiber_cap``, each certified by the bounded horn check.

    Raises :class:`BudgetExhausted` after ``cfg.search_budget`` partial totals.
    """
    N = X.max_dim
    cap = cfg.fiber_cap
    count = [0]

    def grow(levels: list[_Level], m: int) -> Iterator[list[_Level]]:
        if m > N:
            yield levels
            return
        count[0] += 1
        if count[0] > cfg.search_budget:
            raise BudgetExhausted(f"fibration enumeration exceeded {cfg.search_budget} partial totals", count[0])
        forced_lvl = _Level()
        if m > 0:
            prev = levels[m - 1]
            for y, (rd, r, sigma) in enumerate(prev.keys):
                for i in range(m):
                    si = _sigma_i(m, i)
                    key = (rd, r, tuple(sigma[a] for a in si))
                    if key in forced_lvl.index:
                        continue
                    z = X.degens[m - 1][i][prev.base[y]]
                    forced_lvl.add(key, z, ())
            ident = tuple(range(m + 1))
            for j, key in enumerate(forced_lvl.keys):
                forced_lvl.faces[j] = tuple(_resolve(levels, key, delete(ident, i)) for i in range(m + 1))
        forced_by_z: dict[int, list[int]] = {}
        for j, z in enumerate(forced_lvl.base):
            forced_by_z.setdefault(z, []).append(j)
        choices = [_fiber_choices(levels, forced_lvl, X, m, z, forced_by_z.get(z, []), cap) for z in range(X.sizes[m])]
        if any(not c for c in choices):
            return
        for pick in iproduct(*choices):
            lvl = _Level()
            for key, z, f in zip(forced_lvl.keys, forced_lvl.base, forced_lvl.faces):
                lvl.add(key, z, f)
            for z, seq in enumerate(pick):
                fib = []
                for t in seq:
                    if t[0] == "f":
                        fib.append(t[1])
                    else:
                        fib.append(lvl.add((m, len(lvl.keys), tuple(range(m + 1))), z, t[1]))
                lvl.fibers[z] = tuple(fib)
            yield from grow(levels + [lvl], m + 1)

    for levels in grow([], 0):
        w = _assemble(X, levels)
        if certify:
            rep = is_fibration(w.f, cfg)
            if not rep.ok:
                continue
        yield w


def _assemble(X: SimplicialSet, levels: list[_Level]) -> CanonicalWOM:
    N = X.max_dim
    faces: list[tuple] = [()]
    for m in range(1, N + 1):
        faces.append(tuple(tuple(f[i] for f in levels[m].faces) for i in range(m + 1)))
    degens = []
    for m in range(N):
        rows = []
        for i in range(m + 1):
            si = _sigma_i(m + 1, i)
            rows.append(tuple(
                levels[m + 1].index[(rd, r, tuple(sigma[a] for a in si))] for rd, r, sigma in levels[m].keys
            ))
        degens.append(tuple(rows))
    degens.append(())
    sizes = tuple(len(lv.keys) for lv in levels)
    Y = SimplicialSet(N, sizes, tuple(faces), tuple(degens), tuple(tuple(lv.keys) for lv in levels), "small")
    f = SimplicialMap(Y, X, tuple(tuple(lv.base) for lv in levels))
    orders = tuple(tuple(lv.fibers.get(z, ()) for z in range(X.sizes[m])) for m, lv in enumerate(levels))
    return canonicalize(WellOrderedMorphism(f, orders))
