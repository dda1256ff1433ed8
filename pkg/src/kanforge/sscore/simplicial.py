"""Finite simplicial sets truncated at a dimension bound, and maps between them.

Every simplex, degenerate or not, is stored explicitly as a dense integer id in
its level. Faces and degeneracies are plain lookup tables, so all levelwise
constructions elsewhere in the package are table computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

from kanforge.errors import InputError

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, eq=False)
class SimplicialSet:
    """Levels ``0..max_dim`` with face tables ``faces[n][i][x]`` (n >= 1) and
    degeneracy tables ``degens[n][i][x]`` (n < max_dim).

    ``keys`` optionally labels each simplex with a hashable value (monotone
    sequences for standard simplices, pairs for products, ...). ``shape``
    records provenance for generated objects such as ``("horn", n, k)``.
    """

    max_dim: int
    sizes: tuple[int, ...]
    faces: tuple[Table, ...]
    degens: tuple[Table, ...]
    keys: tuple[tuple[Hashable, ...], ...] | None = None
    name: str = ""
    shape: tuple | None = None

    # -- construction -----------------------------------------------------

    @classmethod
    def build(
        cls,
        max_dim: int,
        level_keys: Sequence[Sequence[Hashable]],
        face: Callable[[int, int, Hashable], Hashable],
        degen: Callable[[int, int, Hashable], Hashable],
        name: str = "",
        shape: tuple | None = None,
    ) -> SimplicialSet:
        """Build from labelled levels and structure maps acting on labels."""
        if len(level_keys) != max_dim + 1:
            raise InputError("need one key list per level 0..max_dim")
        index = [{k: j for j, k in enumerate(ks)} for ks in level_keys]
        for n, ks in enumerate(level_keys):
            if len(index[n]) != len(ks):
                raise InputError(f"duplicate simplex labels at level {n}")
        faces: list[Table] = [()]
        for n in range(1, max_dim + 1):
            faces.append(tuple(
                tuple(index[n - 1][face(n, i, k)] for k in level_keys[n])
                for i in range(n + 1)
            ))
        degens: list[Table] = []
        for n in range(max_dim):
            degens.append(tuple(
                tuple(index[n + 1][degen(n, i, k)] for k in level_keys[n])
                for i in range(n + 1)
            ))
        degens.append(())
        return cls(
            max_dim=max_dim,
            sizes=tuple(len(ks) for ks in level_keys),
            faces=tuple(faces),
            degens=tuple(degens),
            keys=tuple(tuple(ks) for ks in level_keys),
            name=name,
            shape=shape,
        )

    # -- basic access -----------------------------------------------------

    def face(self, n: int, i: int, x: int) -> int:
        return self.faces[n][i][x]

    def degen(self, n: int, i: int, x: int) -> int:
        return self.degens[n][i][x]

    def boundary(self, n: int, x: int) -> tuple[int, ...]:
        return tuple(self.faces[n][i][x] for i in range(n + 1))

    def key(self, n: int, x: int) -> Hashable:
        return self.keys[n][x] if self.keys is not None else x

    def index(self, n: int, key: Hashable) -> int:
        return self._key_index[n][key]

    @cached_property
    def _key_index(self) -> tuple[dict, ...]:
        if self.keys is None:
            return tuple({x: x for x in range(s)} for s in self.sizes)
        return tuple({k: j for j, k in enumerate(ks)} for ks in self.keys)

    @property
    def total_size(self) -> int:
        return sum(self.sizes)

    def is_empty(self) -> bool:
        return self.sizes[0] == 0

    # -- degeneracy structure --------------------------------------------

    @cached_property
    def nondeg(self) -> tuple[tuple[bool, ...], ...]:
        flags = [[True] * s for s in self.sizes]
        for n in range(self.max_dim):
            for table in self.degens[n]:
                for y in table:
                    flags[n + 1][y] = False
        return tuple(tuple(f) for f in flags)

    def nondegenerate(self, n: int) -> list[int]:
        return [x for x, f in enumerate(self.nondeg[n]) if f]

    def nondeg_counts(self) -> tuple[int, ...]:
        return tuple(sum(f) for f in self.nondeg)

    @cached_property
    def ez(self) -> tuple[tuple[tuple[int, int, tuple[int, ...]], ...], ...]:
        """Eilenberg-Zilber data per simplex: ``(root_dim, root, word)`` with
        the word listed outermost first and strictly decreasing."""
        out = []
        for n in range(self.max_dim + 1):
            row = []
            for x in range(self.sizes[n]):
                row.append(_ez(self, n, x))
            out.append(tuple(row))
        return tuple(out)

    def apply_word(self, n: int, x: int, word: Sequence[int]) -> int:
        """Apply a degeneracy word (outermost first) to an n-simplex."""
        for i in reversed(word):
            x = self.degens[n][i][x]
            n += 1
        return x

    # -- cosimplicial operators ------------------------------------------

    def apply_op(self, n: int, x: int, alpha: Sequence[int]) -> int:
        """Act on the n-simplex ``x`` by the monotone map ``alpha: [m] -> [n]``."""
        alpha = tuple(alpha)
        cache = self._op_cache
        hit = cache.get((n, x, alpha))
        if hit is not None:
            return hit
        image = sorted(set(alpha))
        y, dim = x, n
        for i in range(n, -1, -1):
            if i not in image:
                y = self.faces[dim][i][y]
                dim -= 1
        m = len(alpha) - 1
        for j in range(m):
            if alpha[j] == alpha[j + 1]:
                y = self.degens[dim][j][y]
                dim += 1
        cache[(n, x, alpha)] = y
        return y

    @cached_property
    def _op_cache(self) -> dict:
        return {}

    @cached_property
    def face_index(self) -> tuple[dict[tuple[int, ...], tuple[int, ...]], ...]:
        """Per level n >= 1, boundary tuple -> simplices with that boundary."""
        out: list[dict] = [{}]
        for n in range(1, self.max_dim + 1):
            idx: dict[tuple[int, ...], list[int]] = {}
            for x in range(self.sizes[n]):
                idx.setdefault(self.boundary(n, x), []).append(x)
            out.append({k: tuple(v) for k, v in idx.items()})
        return tuple(out)

    # -- comparison ------------------------------------------------------

    def structure_key(self) -> tuple:
        return (self.max_dim, self.sizes, self.faces, self.degens)

    def same_structure(self, other: SimplicialSet) -> bool:
        return self is other or self.structure_key() == other.structure_key()

    def __repr__(self) -> str:
        label = self.name or "SimplicialSet"
        return f"<{label} sizes={self.sizes} nondeg={self.nondeg_counts()}>"


def _ez(X: SimplicialSet, n: int, x: int) -> tuple[int, int, tuple[int, ...]]:
    word: list[int] = []
    while n > 0:
        for i in range(n - 1, -1, -1):
            y = X.faces[n][i][x]
            if X.degens[n - 1][i][y] == x:
                word.append(i)
                x, n = y, n - 1
                break
        else:
            break
    return n, x, tuple(word)


@dataclass(frozen=True)
class Simplex:
    set: SimplicialSet
    dim: int
    id: int

    def __post_init__(self) -> None:
        if not (0 <= self.dim <= self.set.max_dim and 0 <= self.id < self.set.sizes[self.dim]):
            raise InputError(f"no simplex {self.id} at level {self.dim}")

    @property
    def nondegenerate(self) -> bool:
        return self.set.nondeg[self.dim][self.id]


def ez_decompose(x: Simplex) -> tuple[Simplex, tuple[int, ...]]:
    """Eilenberg-Zilber normal form: ``x = s_{w[0]} ... s_{w[-1]} root`` with
    ``w`` strictly decreasing."""
    dim, root, word = x.set.ez[x.dim][x.id]
    return Simplex(x.set, dim, root), word


# -- validation ---------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    identity: str
    level: int
    simplex: int
    detail: str

    def __str__(self) -> str:
        return f"{self.identity} fails at level {self.level}, simplex {self.simplex}: {self.detail}"


def validate(X: SimplicialSet) -> list[Violation]:
    """Every violated simplicial identity, with the offending simplex."""
    out: list[Violation] = []
    N = X.max_dim
    if len(X.sizes) != N + 1 or len(X.faces) != N + 1 or len(X.degens) != N + 1:
        return [Violation("shape", -1, -1, "tables do not cover levels 0..max_dim")]
    for n in range(1, N + 1):
        if len(X.faces[n]) != n + 1:
            out.append(Violation("shape", n, -1, f"expected {n + 1} face maps"))
            return out
        for i, t in enumerate(X.faces[n]):
            if len(t) != X.sizes[n] or any(not 0 <= y < X.sizes[n - 1] for y in t):
                out.append(Violation("shape", n, -1, f"face d_{i} is not a total function"))
                return out
    for n in range(N):
        if len(X.degens[n]) != n + 1:
            out.append(Violation("shape", n, -1, f"expected {n + 1} degeneracy maps"))
            return out
        for i, t in enumerate(X.degens[n]):
            if len(t) != X.sizes[n] or any(not 0 <= y < X.sizes[n + 1] for y in t):
                out.append(Violation("shape", n, -1, f"degeneracy s_{i} is not a total function"))
                return out
    d, s = X.faces, X.degens
    for n in range(2, N + 1):
        for x in range(X.sizes[n]):
            for j in range(n + 1):
                for i in range(j):
                    a = d[n - 1][i][d[n][j][x]]
                    b = d[n - 1][j - 1][d[n][i][x]]
                    if a != b:
                        out.append(Violation(f"d_{i} d_{j} = d_{j - 1} d_{i}", n, x, f"{a} != {b}"))
    for n in range(N - 1):
        for x in range(X.sizes[n]):
            for j in range(n + 1):
                for i in range(j + 1):
                    a = s[n + 1][i][s[n][j][x]]
                    b = s[n + 1][j + 1][s[n][i][x]]
                    if a != b:
                        out.append(Violation(f"s_{i} s_{j} = s_{j + 1} s_{i}", n, x, f"{a} != {b}"))
    for n in range(N):
        for x in range(X.sizes[n]):
            for j in range(n + 1):
                y = s[n][j][x]
                for i in range(n + 2):
                    a = d[n + 1][i][y]
                    if i < j:
                        b = s[n - 1][j - 1][d[n][i][x]]
                        rule = f"d_{i} s_{j} = s_{j - 1} d_{i}"
                    elif i in (j, j + 1):
                        b = x
                        rule = f"d_{i} s_{j} = id"
                    else:
                        b = s[n - 1][j][d[n][i - 1][x]]
                        rule = f"d_{i} s_{j} = s_{j} d_{i - 1}"
                    if a != b:
                        out.append(Violation(rule, n, x, f"{a} != {b}"))
    for n in range(N):
        for j, t in enumerate(s[n]):
            if len(set(t)) != len(t):
                seen: dict[int, int] = {}
                for x, y in enumerate(t):
                    if y in seen:
                        out.append(Violation(f"s_{j} injective", n, x, f"collides with {seen[y]}"))
                    seen[y] = x
    return out


# -- maps ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    source: SimplicialSet
    target: SimplicialSet
    comps: tuple[tuple[int, ...], ...]

    def __call__(self, n: int, x: int) -> int:
        return self.comps[n][x]

    def violations(self) -> list[str]:
        """Failures of commutation with the structure maps (empty iff simplicial)."""
        X, Y, f = self.source, self.target, self.comps
        out = []
        if X.max_dim != Y.max_dim:
            return [f"dimension bounds differ: {X.max_dim} vs {Y.max_dim}"]
        for n in range(X.max_dim + 1):
            if len(f[n]) != X.sizes[n] or any(not 0 <= y < Y.sizes[n] for y in f[n]):
                return [f"component at level {n} is not a total function"]
        for n in range(1, X.max_dim + 1):
            for i in range(n + 1):
                for x in range(X.sizes[n]):
                    if Y.faces[n][i][f[n][x]] != f[n - 1][X.faces[n][i][x]]:
                        out.append(f"d_{i} at level {n}, simplex {x}")
        for n in range(X.max_dim):
            for i in range(n + 1):
                for x in range(X.sizes[n]):
                    if Y.degens[n][i][f[n][x]] != f[n + 1][X.degens[n][i][x]]:
                        out.append(f"s_{i} at level {n}, simplex {x}")
        return out

    def is_mono(self) -> bool:
        return all(len(set(c)) == len(c) for c in self.comps)

    def is_epi(self) -> bool:
        return all(len(set(c)) == s for c, s in zip(self.comps, self.target.sizes))

    def is_iso(self) -> bool:
        return self.is_mono() and self.is_epi()

    def inverse(self) -> SimplicialMap:
        if not self.is_iso():
            raise InputError("map is not an isomorphism")
        comps = []
        for c in self.comps:
            inv = [0] * len(c)
            for x, y in enumerate(c):
                inv[y] = x
            comps.append(tuple(inv))
        return SimplicialMap(self.target, self.source, tuple(comps))

    def image_flags(self) -> tuple[tuple[bool, ...], ...]:
        out = []
        for n, c in enumerate(self.comps):
            flags = [False] * self.target.sizes[n]
            for y in c:
                flags[y] = True
            out.append(tuple(flags))
        return tuple(out)

    def preimage_table(self) -> tuple[dict[int, int], ...]:
        """For a mono: target simplex -> its unique preimage."""
        return tuple({y: x for x, y in enumerate(c)} for c in self.comps)

    @cached_property
    def fibers(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """``fibers[n][y]``: source simplices over ``y``, ascending."""
        out = []
        for n, c in enumerate(self.comps):
            buckets: list[list[int]] = [[] for _ in range(self.target.sizes[n])]
            for x, y in enumerate(c):
                buckets[y].append(x)
            out.append(tuple(tuple(b) for b in buckets))
        return tuple(out)

    def max_fiber(self) -> int:
        return max((len(b) for lvl in self.fibers for b in lvl), default=0)

    def same_as(self, other: SimplicialMap) -> bool:
        return (
            self.comps == other.comps
            and self.source.same_structure(other.source)
            and self.target.same_structure(other.target)
        )

    def __repr__(self) -> str:
        return f"<SimplicialMap {self.source!r} -> {self.target!r}>"


def identity(X: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, X, tuple(tuple(range(s)) for s in X.sizes))


def compose(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    """``g . f``"""
    if f.target is not g.source and not f.target.same_structure(g.source):
        raise InputError("maps are not composable")
    return SimplicialMap(
        f.source,
        g.target,
        tuple(tuple(gc[y] for y in fc) for fc, gc in zip(f.comps, g.comps)),
    )


def map_from_function(
    X: SimplicialSet, Y: SimplicialSet, fn: Callable[[int, int], int]
) -> SimplicialMap:
    return SimplicialMap(X, Y, tuple(tuple(fn(n, x) for x in range(X.sizes[n])) for n in range(X.max_dim + 1)))


def check_bounds(*objs: SimplicialSet) -> int:
    dims = {X.max_dim for X in objs}
    if len(dims) != 1:
        raise InputError(f"dimension bounds differ: {sorted(dims)}")
    return dims.pop()


def iter_simplices(X: SimplicialSet) -> Iterable[tuple[int, int]]:
    for n in range(X.max_dim + 1):
        for x in range(X.sizes[n]):
            yield n, x
