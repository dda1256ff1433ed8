"""Lazily represented classifier: its simplices, structure maps, classifying
maps into it, and reconstruction of a map from its classifying map."""

from __future__ import annotations

from dataclasses import dataclass, field

from kanforge.config import Config
from kanforge.errors import InputError
from kanforge.lifting import RlpReport, is_fibration
from kanforge.sscore import SimplicialMap, SimplicialSet, operator_map, standard_simplex, yoneda
from kanforge.sscore.generators import delete, repeat
from kanforge.universe.wom import (
    CanonicalWOM,
    WellOrderedMorphism,
    canonicalize,
    check_cap,
    pullback_wom,
)

CERTIFIED, FAILED, UNCHECKED = "certified", "failed", "unchecked"


@dataclass(frozen=True, eq=False)
class UniverseSimplex:
    """An n-simplex of the classifier: a canonical well-ordered map onto ``Delta[n]``.

    Equality and hashing use the canonical form only; ``kan`` caches the
    membership verdict.
    """

    n: int
    data: CanonicalWOM
    kan: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        shape = self.data.base.shape
        if shape != ("simplex", self.n):
            raise InputError(f"universe simplex of dimension {self.n} must live over Delta[{self.n}]")

    @property
    def key(self) -> tuple:
        return (self.n, self.data.canonical_key)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, UniverseSimplex) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    @property
    def kan_flag(self) -> str:
        return self.kan.get("flag", UNCHECKED)

    def fiber_sizes(self) -> list[int]:
        """Fiber size over each vertex, then over the top simplex."""
        D = self.data.base
        top = D.index(self.n, tuple(range(self.n + 1)))
        return [self.data.fiber_size(0, v) for v in range(D.sizes[0])] + [self.data.fiber_size(self.n, top)]


def universe_apply(alpha: tuple[int, ...], u: UniverseSimplex) -> UniverseSimplex:
    """Act by the operator ``alpha : [m] -> [n]`` through pullback."""
    if len(alpha) == 0 or any(not 0 <= a <= u.n for a in alpha) or list(alpha) != sorted(alpha):
        raise InputError(f"{alpha} is not a monotone map into [{u.n}]")
    bound = u.data.base.max_dim
    t = operator_map(tuple(alpha), u.n, bound)
    return UniverseSimplex(len(alpha) - 1, canonicalize(pullback_wom(t, u.data)))


def in_U(u: UniverseSimplex, cfg: Config) -> str:
    """Bounded fibration check of the simplex's map; cached on the simplex.

    Budget exhaustion leaves the flag unchecked.
    """
    hit = u.kan.get(("report", cfg.search_budget))
    if hit is None:
        hit = is_fibration(u.data.f, cfg)
        u.kan[("report", cfg.search_budget)] = hit
        if hit.status != "unknown":
            u.kan["flag"] = CERTIFIED if hit.ok else FAILED
            u.kan["report"] = hit
    return {"certified": CERTIFIED, "failed": FAILED}.get(hit.status, UNCHECKED)


def membership_report(u: UniverseSimplex) -> RlpReport | None:
    return u.kan.get("report")


def simplex_of(w: WellOrderedMorphism) -> UniverseSimplex:
    """The universe simplex of a well-ordered map onto a standard simplex."""
    shape = w.base.shape or ()
    if shape[:1] != ("simplex",):
        raise InputError("base is not a standard simplex")
    return UniverseSimplex(shape[1], canonicalize(w))


@dataclass(frozen=True, eq=False)
class ClassifyingMap:
    """``assign[n][x]`` is the universe simplex over the n-simplex ``x``."""

    base: SimplicialSet
    assign: tuple[tuple[UniverseSimplex, ...], ...]

    def violations(self) -> list[str]:
        """Incompatibilities with faces and degeneracies (empty iff a simplicial map)."""
        X = self.base
        out = []
        for n in range(X.max_dim + 1):
            ident = tuple(range(n + 1))
            for x in range(X.sizes[n]):
                u = self.assign[n][x]
                if u.n != n:
                    out.append(f"simplex {x} at level {n} is assigned a {u.n}-simplex")
                    continue
                if n > 0:
                    for i in range(n + 1):
                        if universe_apply(delete(ident, i), u) != self.assign[n - 1][X.faces[n][i][x]]:
                            out.append(f"d_{i} at level {n}, simplex {x}")
                if n < X.max_dim:
                    for i in range(n + 1):
                        if universe_apply(repeat(ident, i), u) != self.assign[n + 1][X.degens[n][i][x]]:
                            out.append(f"s_{i} at level {n}, simplex {x}")
        return out

    def same_as(self, other: ClassifyingMap) -> bool:
        return self.base.same_structure(other.base) and self.assign == other.assign

    def precompose(self, t: SimplicialMap) -> ClassifyingMap:
        """``c . t``"""
        if not t.target.same_structure(self.base):
            raise InputError("map does not land in the classified base")
        return ClassifyingMap(t.source, tuple(
            tuple(self.assign[n][y] for y in t.comps[n]) for n in range(t.source.max_dim + 1)
        ))


def classify(w: WellOrderedMorphism, cfg: Config | None = None) -> ClassifyingMap:
    """Pull ``w`` back along every simplex of its base and canonicalize."""
    if cfg is not None:
        check_cap(w.f, cfg)
    X = w.base
    memo: dict[tuple[int, int], UniverseSimplex] = {}
    assign = []
    for n in range(X.max_dim + 1):
        row = []
        for x in range(X.sizes[n]):
            u = memo.get((n, x))
            if u is None:
                u = UniverseSimplex(n, canonicalize(pullback_wom(yoneda(X, n, x), w)))
                memo[(n, x)] = u
            row.append(u)
        assign.append(tuple(row))
    return ClassifyingMap(X, tuple(assign))


def reconstruct(c: ClassifyingMap, check: bool = True) -> WellOrderedMorphism:
    """The well-ordered map classified by ``c``.

    Over each n-simplex ``x`` the fiber is the fiber of ``c(x)`` over the top
    simplex of ``Delta[n]``; compatibility makes positions agree across faces
    and degeneracies.
    """
    if check:
        bad = c.violations()
        if bad:
            raise InputError("classifying map is not compatible: " + "; ".join(bad[:3]))
    X = c.base
    N = X.max_dim
    tops = [standard_simplex(n, N).index(n, tuple(range(n + 1))) for n in range(N + 1)]
    keys = [
        [(x, j) for x in range(X.sizes[n]) for j in range(c.assign[n][x].data.fiber_size(n, tops[n]))]
        for n in range(N + 1)
    ]

    def face(n: int, i: int, k: tuple) -> tuple:
        x, j = k
        d = c.assign[n][x].data
        z = d.total.faces[n][i][d.orders[n][tops[n]][j]]
        return (X.faces[n][i][x], d.total.keys[n - 1][z][1])

    def degen(n: int, i: int, k: tuple) -> tuple:
        x, j = k
        d = c.assign[n][x].data
        z = d.total.degens[n][i][d.orders[n][tops[n]][j]]
        return (X.degens[n][i][x], d.total.keys[n + 1][z][1])

    Y = SimplicialSet.build(N, keys, face, degen, name="reconstructed")
    proj = SimplicialMap(Y, X, tuple(tuple(x for x, _ in ks) for ks in keys))
    orders = []
    for n in range(N + 1):
        lvl, start = [], 0
        for x in range(X.sizes[n]):
            k = c.assign[n][x].data.fiber_size(n, tops[n])
            lvl.append(tuple(range(start, start + k)))
            start += k
        orders.append(tuple(lvl))
    return WellOrderedMorphism(proj, tuple(orders))
