"""Command line front end.

Every command reads one document, resolves its inputs by name (or by type
when unambiguous), calls the library and prints a report. Exit codes:
0 certified, 1 certified negative, 2 unknown or over budget, 3 input error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from typing import Any, Callable

from kanforge.config import Config
from kanforge.errors import BudgetExhausted, CapExceeded, InputError, InternalError, Uncertified
from kanforge.homotopy import minimal_trivialize, quillen_factorize
from kanforge.lifting import Exhausted, Filler, LiftingProblem, Refuted, is_fibration, is_kan, is_trivial_fibration, solve_lifting
from kanforge.shell import oracle
from kanforge.shell.document import Document, dumps, parse, to_raw
from kanforge.slice import SliceMap, SliceObject, internal_hom, joyal_extend, pushforward
from kanforge.sscore import SimplicialMap, SimplicialSet
from kanforge.univalence import (
    NOT_UNIVALENT,
    UNIVALENT,
    check_pp_contractible,
    eq_object,
    eq_self,
    is_univalent,
    pp_level,
    univalent_lift,
)
from kanforge.universe import (
    ClassifyingMap,
    WellOrderedMorphism,
    classify,
    extend_horn_in_U,
    in_U,
    reconstruct,
    well_order,
)

OK, NEGATIVE, UNKNOWN, BAD_INPUT = 0, 1, 2, 3
RLP_EXIT = {"certified": OK, "failed": NEGATIVE, "unknown": UNKNOWN}


@dataclass
class Outcome:
    status: str
    code: int
    report: dict
    summary: str
    emitted: dict[str, Any] = field(default_factory=dict)


# -- input roles --------------------------------------------------------


def _as_set(o: Any) -> SimplicialSet | None:
    return o if isinstance(o, SimplicialSet) else None


def _as_map(o: Any) -> SimplicialMap | None:
    if isinstance(o, SimplicialMap):
        return o
    if isinstance(o, SliceObject):
        return o.proj
    if isinstance(o, WellOrderedMorphism):
        return o.f
    return None


def _as_slice(o: Any) -> SliceObject | None:
    if isinstance(o, SliceObject):
        return o
    if isinstance(o, SimplicialMap):
        return SliceObject(o)
    if isinstance(o, WellOrderedMorphism):
        return o.as_slice()
    return None


def _exact(t: type) -> Callable[[Any], Any]:
    return lambda o: o if isinstance(o, t) else None


ROLES: dict[str, tuple[Callable[[Any], Any], tuple[type, ...]]] = {
    "set": (_as_set, (SimplicialSet,)),
    "map": (_as_map, (SimplicialMap,)),
    "slice": (_as_slice, (SliceObject,)),
    "slice_map": (_exact(SliceMap), (SliceMap,)),
    "wom": (_exact(WellOrderedMorphism), (WellOrderedMorphism,)),
    "problem": (_exact(LiftingProblem), (LiftingProblem,)),
    "classifying_map": (_exact(ClassifyingMap), (ClassifyingMap,)),
}


def resolve(doc: Document, names: list[str], roles: list[str]) -> list[Any]:
    """Inputs by explicit name, or the unique document object of the
    preferred type for each role when names are omitted."""
    if len(names) > len(roles):
        raise InputError(f"expected at most {len(roles)} object names, got {len(names)}")
    out = []
    for j, role in enumerate(roles):
        conv, preferred = ROLES[role]
        if j < len(names):
            obj = doc.get(names[j])
            val = conv(obj)
            if val is None:
                raise InputError(f"object {names[j]!r} cannot serve as {role.replace('_', ' ')}")
            out.append(val)
            continue
        cands = sorted(n for n, o in doc.objects.items() if isinstance(o, preferred) and "." not in n)
        if len(cands) != 1:
            raise InputError(
                f"name the {role.replace('_', ' ')} argument (position {j + 1}); candidates: {cands}"
            )
        out.append(conv(doc.objects[cands[0]]))
    return out


# -- commands -----------------------------------------------------------


def _sizes(x: Any) -> list[int]:
    if isinstance(x, SliceObject):
        x = x.total
    return list(x.sizes)


def _rlp(rep) -> Outcome:
    d = rep.to_dict()
    if rep.failures:
        d["witness"] = rep.failures[0].to_dict()
    return Outcome(rep.status, RLP_EXIT[rep.status], d, str(rep))


def cmd_validate(doc: Document, names: list[str], cfg: Config, a) -> Outcome:
    rows = {}
    for name, obj in sorted(doc.objects.items()):
        entry: dict[str, Any] = {"type": type(obj).__name__}
        if isinstance(obj, (SimplicialSet, SliceObject)):
            entry["sizes"] = _sizes(obj)
        rows[name] = entry
    return Outcome("certified", OK, {"objects": rows}, f"{len(rows)} objects valid")


def cmd_is_kan(doc, names, cfg, a) -> Outcome:
    (X,) = resolve(doc, names, ["set"])
    return _rlp(is_kan(X, cfg))


def cmd_is_fibration(doc, names, cfg, a) -> Outcome:
    (p,) = resolve(doc, names, ["map"])
    return _rlp(is_fibration(p, cfg))


def cmd_is_trivial_fibration(doc, names, cfg, a) -> Outcome:
    (p,) = resolve(doc, names, ["map"])
    return _rlp(is_trivial_fibration(p, cfg))


def cmd_lift(doc, names, cfg, a) -> Outcome:
    (pr,) = resolve(doc, names, ["problem"])
    out = solve_lifting(pr, cfg)
    if isinstance(out, Filler):
        return Outcome("certified", OK, {"outcome": "filler", "nodes": out.nodes}, "diagonal found",
                       {"diagonal": out.diagonal})
    if isinstance(out, Refuted):
        return Outcome("failed", NEGATIVE, {"outcome": "refuted", "variables": out.variables, "nodes": out.nodes},
                       "no diagonal exists")
    assert isinstance(out, Exhausted)
    return Outcome("unknown", UNKNOWN, {"outcome": "exhausted", "budget": out.budget, "nodes": out.nodes},
                   "search budget exhausted")


def cmd_hom(doc, names, cfg, a) -> Outcome:
    E1, E2 = resolve(doc, names, ["slice", "slice"])
    H = internal_hom(E1, E2, cfg)
    return Outcome("certified", OK, {"sizes": _sizes(H.carrier)}, f"hom sizes {_sizes(H.carrier)}",
                   {"hom": H.carrier})


def cmd_pushforward(doc, names, cfg, a) -> Outcome:
    i, p = resolve(doc, names, ["map", "slice"])
    P = pushforward(i, p, cfg)
    rep = {"sizes": _sizes(P.carrier), "max_fiber": P.carrier.max_fiber()}
    return Outcome("certified", OK, rep, f"pushforward sizes {rep['sizes']}", {"pushforward": P.carrier})


def cmd_joyal_extend(doc, names, cfg, a) -> Outcome:
    j, t = resolve(doc, names, ["map", "slice"])
    J = joyal_extend(j, t, cfg)
    code = RLP_EXIT[J.report.status] if J.report.status != "failed" else UNKNOWN
    return Outcome(J.report.status, code, {"sizes": _sizes(J.extension), "trivial_fibration": J.report.to_dict()},
                   f"extension {_sizes(J.extension)}: {J.report}",
                   {"extension": J.extension, "square_top": J.square_top})


def cmd_factorize(doc, names, cfg, a) -> Outcome:
    (q,) = resolve(doc, names, ["slice"])
    mf = quillen_factorize(q, cfg)
    code = OK if mf.g_report.ok else UNKNOWN
    return Outcome("certified" if code == OK else "unknown", code, mf.to_dict(),
                   f"minimal part {_sizes(mf.p)}", {"minimal": mf.p, "g": mf.g, "inclusion": mf.inclusion})


def cmd_minimal_trivialize(doc, names, cfg, a) -> Outcome:
    (p,) = resolve(doc, names, ["slice"])
    tr = minimal_trivialize(p, a.basepoint, cfg)
    return Outcome("certified", OK, {"fiber_sizes": list(tr.fiber.sizes)}, f"fiber {list(tr.fiber.sizes)}",
                   {"iso": tr.iso, "inverse": tr.inverse, "fiber": tr.fiber})


def _wom_of(o: Any, cfg: Config) -> WellOrderedMorphism:
    if isinstance(o, WellOrderedMorphism):
        return o
    return well_order(o.proj, cfg)


def cmd_classify(doc, names, cfg, a) -> Outcome:
    (s,) = resolve(doc, names, ["slice"]) if not _has_wom(doc, names) else resolve(doc, names, ["wom"])
    w = s if isinstance(s, WellOrderedMorphism) else _wom_of(s, cfg)
    c = classify(w, cfg)
    distinct = [len({u.key for u in row}) for row in c.assign]
    return Outcome("certified", OK, {"distinct_simplices": distinct}, f"distinct universe simplices {distinct}",
                   {"classifying_map": c})


def _has_wom(doc: Document, names: list[str]) -> bool:
    if names:
        return isinstance(doc.get(names[0]), WellOrderedMorphism)
    return sum(isinstance(o, WellOrderedMorphism) and "." not in n for n, o in doc.objects.items()) == 1


def cmd_reconstruct(doc, names, cfg, a) -> Outcome:
    (c,) = resolve(doc, names, ["classifying_map"])
    w = reconstruct(c)
    return Outcome("certified", OK, {"sizes": list(w.total.sizes)}, f"total sizes {list(w.total.sizes)}",
                   {"wom": w})


def cmd_extend_horn(doc, names, cfg, a) -> Outcome:
    (c,) = resolve(doc, names, ["classifying_map"])
    u = extend_horn_in_U(c, cfg)
    flag = in_U(u, cfg)
    code = OK if flag == "certified" else UNKNOWN
    return Outcome(flag, code, {"n": u.n, "fiber_sizes": u.fiber_sizes(), "in_U": flag},
                   f"{u.n}-simplex with fiber sizes {u.fiber_sizes()} ({flag})", {"simplex": u})


def cmd_eq(doc, names, cfg, a) -> Outcome:
    E1, E2 = resolve(doc, names, ["slice", "slice"])
    eq = eq_object(E1, E2, cfg)
    return Outcome("certified", OK, {"sizes": _sizes(eq.carrier)}, f"Eq sizes {_sizes(eq.carrier)}",
                   {"eq": eq.carrier})


def cmd_delta(doc, names, cfg, a) -> Outcome:
    (E,) = resolve(doc, names, ["slice"])
    eq = eq_self(E, cfg)
    rep = {"sizes": _sizes(eq.carrier), "delta": [list(r) for r in eq.delta.comps]}
    return Outcome("certified", OK, rep, f"Eq sizes {rep['sizes']}",
                   {"eq": eq.carrier, "delta": eq.delta, "s": eq.s, "t": eq.t})


def cmd_univalent(doc, names, cfg, a) -> Outcome:
    (E,) = resolve(doc, names, ["slice"])
    v = is_univalent(E, cfg)
    code = {UNIVALENT: OK, NOT_UNIVALENT: NEGATIVE}.get(v.status, UNKNOWN)
    return Outcome(v.status, code, v.to_dict(), f"{v.status} (route {v.route})")


def cmd_univalent_lift(doc, names, cfg, a) -> Outcome:
    i, w, Ebar2 = resolve(doc, names, ["map", "slice_map", "slice"])
    ul = univalent_lift(i, w, Ebar2, cfg)
    code = OK if ul.ok else UNKNOWN
    return Outcome("certified" if ul.ok else "unknown", code, ul.to_dict(),
                   f"lifted total {list(ul.source.total.sizes)}", {"source": ul.source, "map": ul.map})


def cmd_pp_level(doc, names, cfg, a) -> Outcome:
    (p,) = resolve(doc, names, ["slice"])
    lv = pp_level(p, a.level, cfg)
    rep = {"level": a.level, "elements": len(lv), "candidates": lv.candidates}
    return Outcome("certified", OK, rep, f"{len(lv)} simplices at level {a.level}")


def cmd_pp_contractible(doc, names, cfg, a) -> Outcome:
    (p,) = resolve(doc, names, ["slice"])
    rep = check_pp_contractible(p, cfg, a.up_to)
    return Outcome(rep.status, RLP_EXIT[rep.status], rep.to_dict(),
                   f"{rep.status}: sizes {list(rep.sizes)}, routes agree: {rep.agree}")


ORACLES: dict[str, tuple[list[str], Callable[..., dict]]] = {
    "count-maps": (["set", "set"], lambda X, Y: {"count": oracle.count_maps(X, Y)}),
    "hom-vertices": (["map", "map"], lambda p, q: {"count": oracle.hom_vertices(p, q)}),
    "adjunction-bijection": (["map", "map", "map"], lambda i, p, q: dict(
        zip(("left", "right"), oracle.adjunction_counts(i, p, q)))),
    "horn-failures": (["map"], lambda p: {"failures": oracle.horn_failures(p)}),
    "boundary-failures": (["map"], lambda p: {"failures": oracle.boundary_failures(p)}),
    "components": (["set"], lambda X: {"components": oracle.components(X)}),
    "pushforward-sizes": (["map", "map"], lambda i, p: {"sizes": oracle.pushforward_sizes(i, p)}),
    "eq-vertices": (["map", "map"], lambda p, q: {"count": oracle.eq_vertices_discrete(p, q)}),
    "univalent-discrete": (["map"], lambda p: {"univalent": oracle.univalent_discrete(p)}),
}


def cmd_oracle(doc, names, cfg, a) -> Outcome:
    if a.kind not in ORACLES:
        raise InputError(f"unknown oracle {a.kind!r}; choose from {sorted(ORACLES)}")
    roles, fn = ORACLES[a.kind]
    rep = {"kind": a.kind, **fn(*resolve(doc, names, roles))}
    code = OK
    if a.kind == "adjunction-bijection":
        rep["bijection"] = rep["left"] == rep["right"]
        code = OK if rep["bijection"] else NEGATIVE
    return Outcome("certified" if code == OK else "failed", code, rep, ", ".join(f"{k}={v}" for k, v in rep.items()))


COMMANDS: dict[str, Callable[..., Outcome]] = {
    "validate": cmd_validate,
    "is-kan": cmd_is_kan,
    "is-fibration": cmd_is_fibration,
    "is-trivial-fibration": cmd_is_trivial_fibration,
    "lift": cmd_lift,
    "hom": cmd_hom,
    "pushforward": cmd_pushforward,
    "joyal-extend": cmd_joyal_extend,
    "factorize": cmd_factorize,
    "minimal-trivialize": cmd_minimal_trivialize,
    "classify": cmd_classify,
    "reconstruct": cmd_reconstruct,
    "extend-horn": cmd_extend_horn,
    "eq": cmd_eq,
    "delta": cmd_delta,
    "univalent": cmd_univalent,
    "univalent-lift": cmd_univalent_lift,
    "pp-level": cmd_pp_level,
    "pp-contractible": cmd_pp_contractible,
    "oracle": cmd_oracle,
}


# -- driver -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kanforge", description="Bounded simplicial homotopy computations.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        if name == "oracle":
            sp.add_argument("kind", help=f"one of {', '.join(sorted(ORACLES))}")
        sp.add_argument("doc", help="document path, or - for stdin")
        sp.add_argument("names", nargs="*", help="input object names")
        sp.add_argument("--max-dim", type=int)
        sp.add_argument("--fiber-cap", type=int)
        sp.add_argument("--budget", type=int)
        sp.add_argument("--seed", type=int)
        sp.add_argument("--format", choices=("human", "machine"), default="human")
        sp.add_argument("-o", "--output", help="also write the machine report here")
        if name == "minimal-trivialize":
            sp.add_argument("--basepoint", type=int, default=0)
        if name == "pp-level":
            sp.add_argument("--level", type=int, default=0)
        if name == "pp-contractible":
            sp.add_argument("--up-to", type=int, default=2)
    return ap


def _overrides(a: argparse.Namespace) -> dict[str, int]:
    pairs = {"max_dim": a.max_dim, "fiber_cap": a.fiber_cap, "search_budget": a.budget, "rng_seed": a.seed}
    return {k: v for k, v in pairs.items() if v is not None}


def _jsonable(v: Any) -> Any:
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if v is None or isinstance(v, (bool, int, float, str)):
        return v
    if hasattr(v, "to_dict"):
        return _jsonable(v.to_dict())
    return repr(v)


def execute(argv: list[str], stdin_text: str | None = None) -> tuple[int, dict, str]:
    """Run a command; returns the exit code, the machine report and the human summary."""
    a = build_parser().parse_args(argv)
    cfg: Config | None = None
    emitted: dict[str, Any] = {}
    try:
        over = _overrides(a)
        cfg = Config().replace(**over)
        if a.doc == "-":
            text = stdin_text if stdin_text is not None else sys.stdin.read()
        else:
            try:
                with open(a.doc, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise InputError(f"cannot read {a.doc}: {exc.strerror}") from None
        doc = parse(text, overrides=over)
        cfg = doc.config or cfg
        out = COMMANDS[a.command](doc, a.names, cfg, a)
        emitted = out.emitted
    except CapExceeded as exc:
        out = Outcome("unknown", UNKNOWN, {"error": "CapExceeded", "message": str(exc),
                                           "level": exc.level, "simplex": exc.simplex}, str(exc))
    except InputError as exc:
        out = Outcome("input-error", BAD_INPUT, {"error": type(exc).__name__, "message": str(exc)}, str(exc))
    except BudgetExhausted as exc:
        out = Outcome("unknown", UNKNOWN, {"error": "BudgetExhausted", "message": str(exc), "nodes": exc.nodes,
                                           "stage": exc.stage}, str(exc))
    except Uncertified as exc:
        out = Outcome("unknown", UNKNOWN, {"error": "Uncertified", "message": str(exc), "missing": exc.missing},
                      str(exc))
    except InternalError as exc:
        out = Outcome("internal-error", UNKNOWN, {"error": "InternalError", "message": str(exc)}, str(exc))
    except RecursionError as exc:
        out = Outcome("unknown", UNKNOWN, {"error": "RecursionError", "message": str(exc)}, str(exc))
    report = to_raw(emitted, cfg)
    report.update(
        command=a.command,
        inputs=list(a.names),
        status=out.status,
        exit_code=out.code,
        report=_jsonable(out.report),
    )
    if a.command == "oracle":
        report["kind"] = a.kind
    human = f"{a.command}: {out.status} (exit {out.code})\n  {out.summary}"
    if emitted:
        human += "\n  emitted: " + ", ".join(sorted(emitted))
    return out.code, report, human


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        a = build_parser().parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    code, report, human = execute(argv)
    text = dumps(report)
    if a.output:
        with open(a.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text if a.format == "machine" else human + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
