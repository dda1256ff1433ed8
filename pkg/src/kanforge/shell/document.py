"""Text documents carrying simplicial objects and a config block.

A document is JSON with a fixed schema tag::

    {"schema": "kanforge/1",
     "config": {"max_dim": 2, ...},
     "objects": {"X": {"type": "simplicial_set", ...}, ...}}

Objects refer to each other by name (a string) or inline (a nested object).
Serialization hoists every nested object to a named entry, emits dense ids
and sorted keys, and is byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from kanforge.config import Config
from kanforge.errors import InputError
from kanforge.lifting import LiftingProblem
from kanforge.slice import SliceMap, SliceObject
from kanforge.sscore import (
    SimplicialMap,
    SimplicialSet,
    boundary,
    codiscrete,
    discrete,
    empty,
    horn,
    point,
    standard_simplex,
    terminal_map,
    validate,
    yoneda,
)
from kanforge.universe import CanonicalWOM, ClassifyingMap, UniverseSimplex, WellOrderedMorphism, canonicalize

SCHEMA = "kanforge/1"


class DocumentError(InputError):
    """Malformed document; the message carries a position or object path."""


@dataclass
class Document:
    objects: dict[str, Any] = field(default_factory=dict)
    config: Config | None = None

    def get(self, name: str) -> Any:
        try:
            return self.objects[name]
        except KeyError:
            raise InputError(f"no object named {name!r}; have {sorted(self.objects)}") from None


# -- values -------------------------------------------------------------


def _to_json(v: Any) -> Any:
    if isinstance(v, tuple):
        return [_to_json(a) for a in v]
    return v


def _from_json(v: Any) -> Any:
    if isinstance(v, list):
        return tuple(_from_json(a) for a in v)
    return v


# -- parsing ------------------------------------------------------------


class _Reader:
    def __init__(self, raw: dict, cfg: Config | None, check: bool):
        self.raw = raw
        self.cfg = cfg
        self.check = check
        self.done: dict[str, Any] = {}
        self.active: set[str] = set()

    def bound(self, path: str) -> int:
        if self.cfg is None:
            raise DocumentError(f"{path}: generator shorthand needs a config block with max_dim")
        return self.cfg.max_dim

    def named(self, name: str) -> Any:
        if name in self.done:
            return self.done[name]
        if name not in self.raw:
            raise DocumentError(f"reference to unknown object {name!r}")
        if name in self.active:
            raise DocumentError(f"objects.{name}: cyclic reference")
        self.active.add(name)
        obj = self.read(self.raw[name], f"objects.{name}")
        self.active.discard(name)
        self.done[name] = obj
        return obj

    def ref(self, v: Any, path: str, want: tuple[type, ...]) -> Any:
        if isinstance(v, str):
            obj = self.named(v)
        elif isinstance(v, dict):
            obj = self.read(v, path)
        else:
            raise DocumentError(f"{path}: expected an object name or an inline object")
        if not isinstance(obj, want):
            raise DocumentError(f"{path}: expected {' or '.join(t.__name__ for t in want)}, got {type(obj).__name__}")
        return obj

    def read(self, d: Any, path: str) -> Any:
        if not isinstance(d, dict) or "type" not in d:
            raise DocumentError(f"{path}: object must be a mapping with a 'type' field")
        kind = d["type"]
        reader = getattr(self, "_" + str(kind).replace("-", "_"), None)
        if reader is None:
            raise DocumentError(f"{path}: unknown object type {kind!r}")
        try:
            return reader(d, path)
        except KeyError as exc:
            raise DocumentError(f"{path}: missing field {exc.args[0]!r}") from None
        except (TypeError, ValueError) as exc:
            raise DocumentError(f"{path}: {exc}") from None

    # simplicial sets

    def _simplicial_set(self, d: dict, path: str) -> SimplicialSet:
        if "generator" in d:
            return _generated(d["generator"], self.bound(path), path)
        N = int(d["max_dim"])
        sizes = tuple(int(s) for s in d["sizes"])
        if len(sizes) != N + 1:
            raise DocumentError(f"{path}.sizes: need {N + 1} levels, got {len(sizes)}")
        faces = [()]
        for n in range(1, N + 1):
            rows = _level_rows(d["faces"], n, sizes[n], f"{path}.faces")
            for x, r in enumerate(rows):
                if len(r) < n + 1:
                    raise DocumentError(f"{path}: simplex {x} at level {n} is missing face d_{len(r)}")
                if len(r) > n + 1:
                    raise DocumentError(f"{path}: simplex {x} at level {n} has {len(r)} faces, expected {n + 1}")
                for i, y in enumerate(r):
                    if not 0 <= y < sizes[n - 1]:
                        raise DocumentError(f"{path}: face d_{i} of simplex {x} at level {n} is out of range ({y})")
            faces.append(tuple(tuple(r[i] for r in rows) for i in range(n + 1)))
        degens = []
        for n in range(N):
            rows = _level_rows(d["degens"], n, sizes[n], f"{path}.degens")
            for x, r in enumerate(rows):
                if len(r) < n + 1:
                    raise DocumentError(f"{path}: simplex {x} at level {n} is missing degeneracy s_{len(r)}")
                if len(r) > n + 1:
                    raise DocumentError(f"{path}: simplex {x} at level {n} has {len(r)} degeneracies, expected {n + 1}")
                for i, y in enumerate(r):
                    if not 0 <= y < sizes[n + 1]:
                        raise DocumentError(
                            f"{path}: degeneracy s_{i} of simplex {x} at level {n} is out of range ({y})"
                        )
            degens.append(tuple(tuple(r[i] for r in rows) for i in range(n + 1)))
        degens.append(())
        keys = None
        if d.get("keys") is not None:
            keys = tuple(tuple(_from_json(k) for k in lvl) for lvl in d["keys"])
            if tuple(len(k) for k in keys) != sizes:
                raise DocumentError(f"{path}.keys: one key per simplex required")
        shape = _from_json(d["shape"]) if d.get("shape") is not None else None
        X = SimplicialSet(N, sizes, tuple(faces), tuple(degens), keys, d.get("name", ""), shape)
        if self.check:
            bad = validate(X)
            if bad:
                more = f" (and {len(bad) - 1} more)" if len(bad) > 1 else ""
                raise DocumentError(f"{path}: {bad[0]}{more}")
        if shape is not None:
            ref = _shape_model(shape, N, path)
            if not ref.same_structure(X):
                raise DocumentError(f"{path}: declared shape {list(shape)} does not match the tables")
            if keys is None:
                X = SimplicialSet(N, sizes, X.faces, X.degens, ref.keys, X.name, shape)
        return X

    # maps and slices

    def _map(self, d: dict, path: str) -> SimplicialMap:
        if "generator" in d:
            g = d["generator"]
            kind = g[0]
            if kind == "terminal":
                return terminal_map(self.ref(g[1], f"{path}.generator[1]", (SimplicialSet,)))
            if kind == "horn_inclusion":
                return horn(int(g[1]), int(g[2]), self.bound(path))[1]
            if kind == "boundary_inclusion":
                return boundary(int(g[1]), self.bound(path))[1]
            if kind == "yoneda":
                X = self.ref(g[1], f"{path}.generator[1]", (SimplicialSet,))
                return yoneda(X, int(g[2]), int(g[3]))
            raise DocumentError(f"{path}.generator: unknown map generator {kind!r}")
        S = self.ref(d["source"], f"{path}.source", (SimplicialSet,))
        T = self.ref(d["target"], f"{path}.target", (SimplicialSet,))
        comps = tuple(tuple(int(v) for v in row) for row in d["comps"])
        if len(comps) != S.max_dim + 1 or S.max_dim != T.max_dim:
            raise DocumentError(f"{path}: components must cover levels 0..{S.max_dim} of matching bounds")
        for n, row in enumerate(comps):
            if len(row) != S.sizes[n]:
                raise DocumentError(f"{path}.comps[{n}]: need {S.sizes[n]} entries, got {len(row)}")
            for x, y in enumerate(row):
                if not 0 <= y < T.sizes[n]:
                    raise DocumentError(f"{path}: simplex {x} at level {n} maps out of range ({y})")
        f = SimplicialMap(S, T, comps)
        if self.check:
            bad = f.violations()
            if bad:
                raise DocumentError(f"{path}: not simplicial: {bad[0]}")
        return f

    def _slice(self, d: dict, path: str) -> SliceObject:
        return SliceObject(self.ref(d["proj"], f"{path}.proj", (SimplicialMap,)))

    def _slice_map(self, d: dict, path: str) -> SliceMap:
        E1 = self.ref(d["source"], f"{path}.source", (SliceObject,))
        E2 = self.ref(d["target"], f"{path}.target", (SliceObject,))
        m = self.ref(d["map"], f"{path}.map", (SimplicialMap,))
        f = SliceMap(E1, E2, m)
        if self.check and f.violations():
            raise DocumentError(f"{path}: {f.violations()[0]}")
        return f

    def _wom(self, d: dict, path: str) -> WellOrderedMorphism:
        f = self.ref(d["map"], f"{path}.map", (SimplicialMap,))
        if d.get("orders") is None:
            return WellOrderedMorphism(f, f.fibers)
        orders = tuple(tuple(tuple(int(v) for v in seq) for seq in lvl) for lvl in d["orders"])
        w = WellOrderedMorphism(f, orders)
        if d.get("canonical"):
            c = CanonicalWOM(f, orders)
            if not canonicalize(w).same_form(c):
                raise DocumentError(f"{path}: marked canonical but is not in canonical form")
            return c
        return w

    def _universe_simplex(self, d: dict, path: str) -> UniverseSimplex:
        w = self.ref(d["wom"], f"{path}.wom", (WellOrderedMorphism,))
        return UniverseSimplex(int(d["n"]), w if isinstance(w, CanonicalWOM) else canonicalize(w))

    def _classifying_map(self, d: dict, path: str) -> ClassifyingMap:
        X = self.ref(d["base"], f"{path}.base", (SimplicialSet,))
        table = [self.ref(u, f"{path}.simplices[{j}]", (UniverseSimplex,)) for j, u in enumerate(d["simplices"])]
        assign = tuple(tuple(table[int(j)] for j in row) for row in d["assign"])
        if tuple(len(r) for r in assign) != X.sizes:
            raise DocumentError(f"{path}.assign: one entry per base simplex required")
        c = ClassifyingMap(X, assign)
        if self.check:
            bad = c.violations()
            if bad:
                raise DocumentError(f"{path}: not simplicial: {bad[0]}")
        return c

    def _lifting_problem(self, d: dict, path: str) -> LiftingProblem:
        parts = {k: self.ref(d[k], f"{path}.{k}", (SimplicialMap,)) for k in ("left", "right", "top", "bottom")}
        pr = LiftingProblem(**parts)
        if self.check and not pr.commutes():
            raise DocumentError(f"{path}: square does not commute")
        return pr


def _level_rows(table: Any, n: int, size: int, path: str) -> list:
    if not isinstance(table, list) or len(table) <= n:
        raise DocumentError(f"{path}: missing level {n}")
    rows = table[n]
    if not isinstance(rows, list) or len(rows) != size:
        raise DocumentError(f"{path}[{n}]: need {size} simplices, got {len(rows) if isinstance(rows, list) else 0}")
    return [[int(v) for v in r] for r in rows]


def _generated(g: Any, bound: int, path: str) -> SimplicialSet:
    if not isinstance(g, list) or not g:
        raise DocumentError(f"{path}.generator: expected a list like [\"simplex\", 1]")
    kind, args = g[0], [int(a) for a in g[1:]]
    try:
        if kind == "simplex":
            return standard_simplex(args[0], bound)
        if kind == "horn":
            return horn(args[0], args[1], bound)[0]
        if kind == "boundary":
            return boundary(args[0], bound)[0]
        if kind == "point":
            return point(bound)
        if kind == "empty":
            return empty(bound)
        if kind == "discrete":
            return discrete(args[0], bound)
        if kind == "codiscrete":
            return codiscrete(args[0], bound)
    except IndexError:
        raise DocumentError(f"{path}.generator: too few arguments for {kind!r}") from None
    raise DocumentError(f"{path}.generator: unknown generator {kind!r}")


def _shape_model(shape: tuple, bound: int, path: str) -> SimplicialSet:
    if shape[:1] == ("simplex",) and len(shape) == 2:
        return standard_simplex(shape[1], bound)
    if shape[:1] == ("horn",) and len(shape) == 3:
        return horn(shape[1], shape[2], bound)[0]
    if shape[:1] == ("boundary",) and len(shape) == 2:
        return boundary(shape[1], bound)[0]
    raise DocumentError(f"{path}.shape: unsupported shape {list(shape)}")


def parse(text: str, check: bool = True, overrides: dict | None = None) -> Document:
    """Read a document; every object is resolved and, with ``check``,
    validated against the simplicial identities.

    ``overrides`` replaces fields of the config block (creating one from the
    defaults if absent) before any generator shorthand is expanded.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise DocumentError("top level must be a mapping")
    if raw.get("schema") != SCHEMA:
        raise DocumentError(f"schema must be {SCHEMA!r}, got {raw.get('schema')!r}")
    extra = set(raw) - {"schema", "config", "objects"}
    if extra:
        raise DocumentError(f"unknown top-level fields: {sorted(extra)}")
    cfg = None
    if raw.get("config") is not None:
        if not isinstance(raw["config"], dict):
            raise DocumentError("config: must be a mapping")
        try:
            cfg = Config.from_dict(raw["config"])
        except (InputError, TypeError, ValueError) as exc:
            raise DocumentError(f"config: {exc}") from None
    if overrides:
        cfg = (cfg or Config()).replace(**overrides)
    objs = raw.get("objects", {})
    if not isinstance(objs, dict):
        raise DocumentError("objects: must be a mapping")
    r = _Reader(objs, cfg, check)
    return Document({name: r.named(name) for name in objs}, cfg)


# -- serialization ------------------------------------------------------


class _Writer:
    def __init__(self) -> None:
        self.out: dict[str, dict] = {}
        self.names: dict[int, str] = {}
        self.keep: list[Any] = []

    def reserve(self, name: str, obj: Any) -> None:
        self.names.setdefault(id(obj), name)
        self.keep.append(obj)

    def emit(self, name: str, obj: Any) -> None:
        owner = self.names[id(obj)]
        if owner != name:
            self.out[name] = self.out.get(owner) or self.encode(obj, owner)
            return
        self.out[name] = self.encode(obj, name)

    def sub(self, obj: Any, name: str) -> str:
        if id(obj) in self.names:
            return self.names[id(obj)]
        j, cand = 1, name
        while cand in self.out or cand in self.names.values():
            j += 1
            cand = f"{name}{j}"
        self.reserve(cand, obj)
        self.out[cand] = {}
        self.out[cand] = self.encode(obj, cand)
        return cand

    def encode(self, obj: Any, name: str) -> dict:
        if isinstance(obj, SimplicialSet):
            return encode_simplicial_set(obj)
        if isinstance(obj, SimplicialMap):
            return {
                "type": "map",
                "source": self.sub(obj.source, f"{name}.source"),
                "target": self.sub(obj.target, f"{name}.target"),
                "comps": [list(r) for r in obj.comps],
            }
        if isinstance(obj, SliceObject):
            return {"type": "slice", "proj": self.sub(obj.proj, f"{name}.proj")}
        if isinstance(obj, SliceMap):
            return {
                "type": "slice_map",
                "source": self.sub(obj.source, f"{name}.source"),
                "target": self.sub(obj.target, f"{name}.target"),
                "map": self.sub(obj.map, f"{name}.map"),
            }
        if isinstance(obj, WellOrderedMorphism):
            d = {
                "type": "wom",
                "map": self.sub(obj.f, f"{name}.map"),
                "orders": [[list(s) for s in lvl] for lvl in obj.orders],
            }
            if isinstance(obj, CanonicalWOM):
                d["canonical"] = True
            return d
        if isinstance(obj, UniverseSimplex):
            return {"type": "universe_simplex", "n": obj.n, "wom": self.sub(obj.data, f"{name}.wom")}
        if isinstance(obj, ClassifyingMap):
            table: dict[tuple, int] = {}
            simplices: list[str] = []
            assign = []
            for n, row in enumerate(obj.assign):
                out = []
                for x, u in enumerate(row):
                    if u.key not in table:
                        table[u.key] = len(simplices)
                        simplices.append(self.sub(u, f"{name}.u{len(simplices)}"))
                    out.append(table[u.key])
                assign.append(out)
            return {
                "type": "classifying_map",
                "base": self.sub(obj.base, f"{name}.base"),
                "simplices": simplices,
                "assign": assign,
            }
        if isinstance(obj, LiftingProblem):
            return {
                "type": "lifting_problem",
                **{k: self.sub(getattr(obj, k), f"{name}.{k}") for k in ("left", "right", "top", "bottom")},
            }
        raise InputError(f"cannot serialize {type(obj).__name__}")


def encode_simplicial_set(X: SimplicialSet) -> dict:
    N = X.max_dim
    faces: list[list] = [[[] for _ in range(X.sizes[0])]]
    for n in range(1, N + 1):
        faces.append([[X.faces[n][i][x] for i in range(n + 1)] for x in range(X.sizes[n])])
    degens = [[[X.degens[n][i][x] for i in range(n + 1)] for x in range(X.sizes[n])] for n in range(N)]
    d: dict[str, Any] = {
        "type": "simplicial_set",
        "max_dim": N,
        "sizes": list(X.sizes),
        "faces": faces,
        "degens": degens,
    }
    if X.keys is not None:
        d["keys"] = [[_to_json(k) for k in lvl] for lvl in X.keys]
    if X.name:
        d["name"] = X.name
    if X.shape is not None:
        d["shape"] = _to_json(X.shape)
    return d


def to_raw(objects: dict[str, Any], config: Config | None = None) -> dict:
    w = _Writer()
    for name in sorted(objects):
        w.reserve(name, objects[name])
    for name in sorted(objects):
        w.emit(name, objects[name])
    raw: dict[str, Any] = {"schema": SCHEMA, "objects": w.out}
    if config is not None:
        raw["config"] = config.to_dict()
    return raw


def dumps(raw: Any) -> str:
    return json.dumps(raw, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def serialize(doc: Document) -> str:
    return dumps(to_raw(doc.objects, doc.config))
