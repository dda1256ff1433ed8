"""Homotopies, deformation retractions over a base, and the search that finds them."""

from __future__ import annotations

from dataclasses import dataclass

from kanforge.config import Config
from kanforge.errors import InputError, InternalError
from kanforge.lifting import Exhausted, Filler, LiftingProblem, Refuted, solve_lifting
from kanforge.slice import SliceMap, SliceObject
from kanforge.sscore import SimplicialMap, SimplicialSet, compose, product, standard_simplex, subcomplex


def interval(bound: int) -> SimplicialSet:
    return standard_simplex(1, bound)


def constant_index(D1: SimplicialSet, n: int, eps: int) -> int:
    return D1.index(n, (eps,) * (n + 1))


def cylinder(X: SimplicialSet) -> tuple[SimplicialSet, SimplicialMap, SimplicialMap]:
    """``X x Delta[1]`` with its projections."""
    return product(X, interval(X.max_dim))


def end_inclusion(X: SimplicialSet, cyl: SimplicialSet, eps: int) -> SimplicialMap:
    """``X -> X x Delta[1]``, ``x |-> (x, eps)``."""
    D1 = interval(X.max_dim)
    return SimplicialMap(X, cyl, tuple(
        tuple(cyl.index(n, (x, constant_index(D1, n, eps))) for x in range(X.sizes[n]))
        for n in range(X.max_dim + 1)
    ))


@dataclass(frozen=True, eq=False)
class Homotopy:
    """``H : X x Delta[1] -> Y``; the endpoints are computed on demand."""

    H: SimplicialMap

    def end(self, X: SimplicialSet, eps: int) -> SimplicialMap:
        return compose(self.H, end_inclusion(X, self.H.source, eps))


@dataclass(frozen=True, eq=False)
class DeformationRetraction:
    """``H`` deforms the identity of ``E2`` into a map landing in ``w(E1)``,
    fixing ``w(E1)`` throughout and staying over ``A``."""

    ambient: SliceObject
    sub: SliceMap
    H: Homotopy

    def start(self) -> SimplicialMap:
        return self.H.end(self.ambient.total, 0)

    def finish(self) -> SimplicialMap:
        return self.H.end(self.ambient.total, 1)

    def retraction(self) -> SimplicialMap:
        """``r : E2 -> E1`` with ``w . r = H_1``."""
        inv = self.sub.map.preimage_table()
        end = self.finish()
        return SimplicialMap(
            self.ambient.total, self.sub.source.total,
            tuple(tuple(inv[n][y] for y in c) for n, c in enumerate(end.comps)),
        )


def _retraction_square(w: SliceMap) -> tuple[LiftingProblem, SimplicialSet]:
    E2 = w.target.total
    cyl, pr, _ = cylinder(E2)
    D1 = interval(E2.max_dim)
    img = w.map.image_flags()
    zero = [constant_index(D1, n, 0) for n in range(E2.max_dim + 1)]
    L, incl = subcomplex(cyl, lambda n, z: img[n][cyl.keys[n][z][0]] or cyl.keys[n][z][1] == zero[n])
    top = SimplicialMap(L, E2, tuple(tuple(e for e, _ in lvl) for lvl in L.keys))
    bottom = compose(w.target.proj, pr)
    return LiftingProblem(incl, w.target.proj, top, bottom), cyl


def find_deformation_retraction(
    w: SliceMap, cfg: Config
) -> DeformationRetraction | Refuted | Exhausted:
    """Search for a deformation retraction of ``E2`` onto the image of ``w``.

    Solved as one extension problem from ``E1 x Delta[1] u E2 x {0}`` to
    ``E2 x Delta[1]`` over ``A``, with the end at 1 constrained to ``w(E1)``.
    """
    if not w.is_mono():
        raise InputError("deformation retraction needs a monomorphism")
    pr, cyl = _retraction_square(w)
    D1 = interval(cyl.max_dim)
    one = [constant_index(D1, n, 1) for n in range(cyl.max_dim + 1)]
    images = [frozenset(c) for c in w.map.comps]

    def allowed(n: int, z: int):
        return images[n] if cyl.keys[n][z][1] == one[n] else None

    out = solve_lifting(pr, cfg, allowed=allowed)
    if not isinstance(out, Filler):
        return out
    d = DeformationRetraction(w.target, w, Homotopy(out.diagonal))
    bad = verify_deformation_retraction(d)
    if bad:
        raise InternalError("found homotopy failed verification: " + "; ".join(bad))
    return d


def constant_homotopy(E: SliceObject) -> DeformationRetraction:
    cyl, pr, _ = cylinder(E.total)
    ident = SliceMap(E, E, SimplicialMap(E.total, E.total, tuple(tuple(range(s)) for s in E.total.sizes)))
    return DeformationRetraction(E, ident, Homotopy(pr))


def verify_deformation_retraction(d: DeformationRetraction) -> list[str]:
    """Every failed clause, empty iff ``d`` is a deformation retraction over the base."""
    E2 = d.ambient.total
    H = d.H.H
    out = [f"homotopy is not simplicial: {v}" for v in H.violations()[:3]]
    if out:
        return out
    if H.source.keys is None or not all(
        len(lvl) == E2.sizes[n] * interval(E2.max_dim).sizes[n] for n, lvl in enumerate(H.source.keys)
    ):
        return ["homotopy is not defined on the cylinder of the ambient object"]
    if d.start().comps != tuple(tuple(range(s)) for s in E2.sizes):
        out.append("H_0 is not the identity")
    img = d.sub.map.image_flags()
    if any(not img[n][y] for n, c in enumerate(d.finish().comps) for y in c):
        out.append("H_1 does not factor through the subobject")
    for n, lvl in enumerate(H.source.keys):
        for z, (e, _) in enumerate(lvl):
            if img[n][e] and H.comps[n][z] != e:
                out.append(f"H moves the subobject at level {n}, simplex {e}")
                break
    proj = d.ambient.proj.comps
    for n, lvl in enumerate(H.source.keys):
        if any(proj[n][H.comps[n][z]] != proj[n][e] for z, (e, _) in enumerate(lvl)):
            out.append(f"H is not a map over the base at level {n}")
            break
    return out
