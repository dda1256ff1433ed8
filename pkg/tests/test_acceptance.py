"""Acceptance suite: one test per criterion, each recording a summary line."""

import json
import os
import random
import subprocess
import sys
import time
from math import prod
from pathlib import Path

from helpers import empty_or_point, over_point, two_points, vertex
from kanforge.config import Config
from kanforge.errors import CapExceeded
from kanforge.lifting import is_fibration, is_kan, is_trivial_fibration
from kanforge.shell import oracle
from kanforge.shell.cli import execute
from kanforge.shell.document import dumps
from kanforge.slice import (
    SliceMap,
    SliceObject,
    counit_iso,
    internal_hom,
    over_itself,
    pullback_along,
    pushforward,
    slice_identity,
)
from kanforge.sscore import (
    SimplicialMap,
    boundary,
    codiscrete,
    compose,
    discrete,
    empty,
    enumerate_maps,
    horn,
    identity,
    point,
    product,
    pullback,
    standard_simplex,
    subcomplex,
    terminal_map,
    yoneda,
)
from kanforge.homotopy import pi0
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
    CERTIFIED,
    canonicalize,
    classify,
    extend_horn_in_U,
    in_U,
    pullback_wom,
    reconstruct,
    universe_apply,
)
from kanforge.universe.samples import (
    duplicate_top,
    random_base,
    random_base_change,
    random_covering,
    random_order,
    random_subobject,
)

DATA = Path(__file__).parent / "data"
ROOT = Path(__file__).parent.parent


def _random_wom(rng, X, cap=3):
    f = duplicate_top(rng, X, cap) if rng.random() < 0.3 else random_covering(rng, X, cap)
    return random_order(rng, f)


def test_criterion_01_classification_round_trip(record):
    rng = random.Random(101)
    t0 = time.time()
    cases = bad = 0
    for _ in range(120):
        X = random_base(rng, 3, max_nondeg=12, top=3)
        w = _random_wom(rng, X)
        cases += 1
        a = canonicalize(reconstruct(classify(w)))
        b = canonicalize(w)
        bad += not (a.same_form(b) and dumps(a.canonical_key) == dumps(b.canonical_key))
    dt = time.time() - t0
    record(f"{cases} round trips, {bad} mismatches, {dt:.1f}s")
    assert cases >= 100 and bad == 0 and dt < 60


def test_criterion_02_naturality(record):
    rng = random.Random(202)
    t0 = time.time()
    cases = bad = 0
    for _ in range(60):
        X = random_base(rng, 3, max_nondeg=12, top=3)
        w = _random_wom(rng, X)
        t = random_base_change(rng, X)
        cases += 1
        bad += not classify(pullback_wom(t, w)).same_as(classify(w).precompose(t))
    dt = time.time() - t0
    record(f"{cases} base changes, {bad} mismatches, {dt:.1f}s")
    assert cases >= 50 and bad == 0 and dt < 60


def _section_bound(i, p, B, n, b):
    """Nondegenerate simplices of the restricted simplex, each contributing its fiber."""
    Ab, _, to_a = pullback(yoneda(B, n, b), i)
    return prod(len(p.fibers[m][to_a.comps[m][x]]) for m in range(Ab.max_dim + 1) for x in Ab.nondegenerate(m))


def test_criterion_03_adjunction_laws(record):
    rng = random.Random(303)
    wide = Config(max_dim=3, fiber_cap=10**4)
    tight = Config(max_dim=3, fiber_cap=3)
    t0 = time.time()
    cases = bad = trivial = capped = 0
    for _ in range(60):
        B = random_base(rng, 3, max_nondeg=8, top=3)
        i = random_subobject(rng, B)
        A = i.source
        if not A.sizes[0]:
            p = identity(A)
        elif rng.random() < 0.5:
            p = duplicate_top(rng, A, 3)
        else:
            p = random_covering(rng, A, 3)
        E = SliceObject(p)
        cases += 1
        c = counit_iso(i, E, wide)
        ok = c.counit.map.is_iso() and not c.counit.violations()
        T = pushforward(i, E, wide).carrier
        ok &= all(
            len(T.proj.fibers[n][b]) <= _section_bound(i, p, B, n, b)
            for n in range(B.max_dim + 1)
            for b in range(B.sizes[n])
        )
        try:
            ok &= pushforward(i, E, tight).carrier.max_fiber() <= 3
        except CapExceeded:
            capped += 1
            ok &= T.max_fiber() > 3
        if is_trivial_fibration(p, wide).ok:
            trivial += 1
            ok &= is_trivial_fibration(T.proj, wide).ok
        bad += not ok
    dt = time.time() - t0
    record(f"{cases} cases ({trivial} trivial fibrations, {capped} over cap), {bad} failures, {dt:.1f}s")
    assert cases >= 50 and bad == 0 and dt < 120


def _in_u_horn(rng, n, k, N):
    H, incl = horn(n, k, N)
    kind = rng.randrange(3)
    if kind == 0:
        return classify(random_order(rng, random_covering(rng, H, 3)))
    if kind == 1:
        f = duplicate_top(rng, standard_simplex(n, N), 3)
    else:
        K = random_base(rng, N, max_nondeg=8, top=3)
        f = pullback_along(yoneda(K, n, rng.randrange(K.sizes[n])), SliceObject(random_covering(rng, K, 3))).proj
    return classify(pullback_wom(incl, random_order(rng, f)))


def test_criterion_04_universe_is_kan(record):
    rng = random.Random(404)
    cfg = Config(max_dim=3, fiber_cap=3)
    t0 = time.time()
    cases = bad = 0
    per = {}
    for n in range(1, 4):
        for k in range(n + 1):
            good = 0
            for _ in range(25):
                c = _in_u_horn(rng, n, k, 3)
                H = c.base
                out = extend_horn_in_U(c, cfg)
                ok = in_U(out, cfg) == CERTIFIED
                for j in range(n + 1):
                    if j != k:
                        face = tuple(m for m in range(n + 1) if m != j)
                        ok &= universe_apply(face, out) == c.assign[n - 1][H.index(n - 1, face)]
                cases += 1
                good += ok
                bad += not ok
            per[(n, k)] = good
    dt = time.time() - t0
    record(f"{cases} horns over all (n,k) with n<=3, min {min(per.values())} per horn, {bad} failures, {dt:.1f}s")
    assert bad == 0 and min(per.values()) >= 25 and dt < 300


def test_criterion_05_univalent_lift_families(record):
    cfg = Config(max_dim=3, fiber_cap=3)
    t0 = time.time()
    results = {}

    # identity: vertex 0 of the interval, w the identity
    D1 = standard_simplex(1, 3)
    i = yoneda(D1, 0, 0)
    Eb2 = over_itself(D1)
    results["identity"] = univalent_lift(i, slice_identity(pullback_along(i, Eb2)), Eb2, cfg)

    # trivial fibration: duplicated top simplex over a facet of Delta[4]
    B = standard_simplex(4, 3)
    i = yoneda(B, 3, B.index(3, (0, 1, 2, 3)))
    A = i.source
    Eb2 = over_itself(B)
    E2 = pullback_along(i, Eb2)
    d = duplicate_top(random.Random(5), A, 3)
    to_e2 = SimplicialMap(A, E2.total, tuple(
        tuple(E2.total.index(n, (a, i.comps[n][a])) for a in range(A.sizes[n])) for n in range(4)
    ))
    m = compose(to_e2, d)
    results["trivial-fibration"] = univalent_lift(i, SliceMap(SliceObject(compose(E2.proj, m)), E2, m), Eb2, cfg)

    # deformation retract: a vertex into the groupoid fiber over a point
    G = codiscrete(2, 3)
    Eb2 = SliceObject(terminal_map(G))
    i = identity(point(3))
    E2 = pullback_along(i, Eb2)
    V, v = subcomplex(E2.total, lambda n, x: E2.total.keys[n][x][1] == G.apply_op(0, 0, (0,) * (n + 1)))
    results["deformation-retract"] = univalent_lift(i, SliceMap(SliceObject(compose(E2.proj, v)), E2, v), Eb2, cfg)

    cases = {k: r.reports["weq"]["case"] for k, r in results.items()}
    ok = all(r.ok for r in results.values()) and d.source.sizes[3] > A.sizes[3]
    ok &= cases["trivial-fibration"] == "trivial-fibration"
    ok &= cases["deformation-retract"] == "trivial-cofibration"
    ok &= all(is_fibration(r.source.proj, cfg).ok for r in results.values())
    dt = time.time() - t0
    record(f"families {cases}, all reports ok: {ok}, {dt:.1f}s")
    assert ok and dt < 120


def test_criterion_06_eq_plumbing(record):
    rng = random.Random(606)
    cfg = Config(max_dim=2, fiber_cap=3)
    t0 = time.time()
    cases = bad = 0
    while cases < 30:
        B = random_base(rng, 2, max_nondeg=8, top=2)
        make = [lambda: random_covering(rng, B, 3), lambda: duplicate_top(rng, B, 2)]
        E1 = SliceObject(rng.choice(make)())
        E2 = SliceObject(rng.choice(make)())
        if not (is_fibration(E1.proj, cfg).ok and is_fibration(E2.proj, cfg).ok):
            continue
        cases += 1
        hom_ok = is_fibration(internal_hom(E1, E2, cfg).carrier.proj, cfg).ok
        eq_ok = is_fibration(eq_object(E1, E2, cfg).carrier.proj, cfg).ok
        bad += not (hom_ok and eq_ok)
    dt = time.time() - t0
    record(f"{cases} fibrant pairs, {bad} non-fibrant carriers, {dt:.1f}s")
    assert cases >= 25 and bad == 0 and dt < 120


def test_criterion_07_univalence_verdicts(record):
    cfg = Config(max_dim=2)
    ident = is_univalent(over_point(point(2)), cfg)
    two = is_univalent(two_points(), cfg)
    eop = is_univalent(empty_or_point(), cfg)
    ev = two.evidence.evidence
    ok = ident.status == UNIVALENT and eop.status == UNIVALENT
    ok &= two.status == NOT_UNIVALENT and two.route == "pi0"
    ok &= (ev.source_components, ev.target_components) == (1, 2)
    record(f"id: {ident.status}, 2pt: {two.status} via {two.route} ({ev.source_components} vs "
           f"{ev.target_components}), empty/point: {eop.status}")
    assert ok


def test_criterion_08_contractibility_probe(record):
    cfg = Config(max_dim=2, fiber_cap=1)
    t0 = time.time()
    reps = {
        "id": check_pp_contractible(over_point(point(2)), cfg, up_to=2),
        "empty": check_pp_contractible(SliceObject(terminal_map(empty(2))), cfg, up_to=2),
    }
    dt = time.time() - t0
    ok = all(r.status == "certified" and r.agree for r in reps.values())
    record(", ".join(f"{k}: {r.status}, routes agree {r.agree}" for k, r in reps.items()) + f", {dt:.1f}s")
    assert ok and dt < 60


def _derived_checks():
    """Pairs (claimed, library, oracle) for the examples with an independent oracle."""
    N = 2
    D1, D2 = standard_simplex(1, 3), standard_simplex(2, N)
    two = discrete(2, N)
    B1, _ = boundary(1, N)
    B2, _ = boundary(2, N)
    H, _ = horn(2, 1, N)
    I = standard_simplex(1, N)
    v0 = vertex(I, 0)
    E2 = two_points(N)
    pt = over_point(point(N))
    P, _, pr = product(two, I)
    G = codiscrete(2, N)
    out = {
        "interval level sizes": ((2, 3, 4, 5), D1.sizes, oracle.simplex_level_sizes(1, 3)),
        "triangle nondegenerate": ((3, 3, 1), D2.nondeg_counts(), oracle.simplex_nondeg_counts(2)),
        "inner horn nondegenerate": ((3, 2), H.nondeg_counts()[:2], _nondeg(H)[:2]),
        "square triangles": (2, product(I, I)[0].nondeg_counts()[2], _nondeg(product(I, I)[0])[2]),
        "two edges": ((4, 2), P.nondeg_counts()[:2], (_nondeg(P)[0], _nondeg(P)[1])),
        "two edges components": (2, len(pi0(P)), oracle.components(P)),
        "pullback of two points": (
            (4, 2),
            pullback(terminal_map(I), terminal_map(two))[0].nondeg_counts()[:2],
            _nondeg(oracle.pullback_along(terminal_map(I), terminal_map(two)).source)[:2],
        ),
        "normal form s1 s0": ((1, 0), point(N).ez[2][point(N).apply_word(0, 0, (1, 0))][2],
                              oracle.degeneracy_normal_form((1, 0))),
        "maps interval to interval": (3, len(enumerate_maps(I, I)), oracle.count_maps(I, I)),
        "maps boundary to two points": (4, len(enumerate_maps(B1, two)), oracle.count_maps(B1, two)),
        "two points refute boundary": (
            [1],
            [f.generator[1] for f in is_trivial_fibration(terminal_map(two), Config(max_dim=N)).failures],
            oracle.boundary_failures(terminal_map(two)),
        ),
        "two edges fibration": ([], [f.generator for f in is_fibration(pr, Config(max_dim=N)).failures],
                                oracle.horn_failures(pr)),
        "vertex inclusion horn": (
            True,
            ("horn", 1, 0) in {f.generator for f in is_fibration(yoneda(I, 0, 0), Config(max_dim=N)).failures},
            (1, 0) in oracle.horn_failures(yoneda(I, 0, 0)),
        ),
        "interval to point boundary": (
            [1],
            [f.generator[1] for f in is_trivial_fibration(terminal_map(I), Config(max_dim=N)).failures],
            oracle.boundary_failures(terminal_map(I)),
        ),
        "interval outer horn": ((2, 0), is_kan(I, Config(max_dim=N)).failures[0].generator[1:],
                                oracle.horn_failures(terminal_map(I))[0]),
        "groupoid kan": ([], list(is_kan(G, Config(max_dim=N)).failures), oracle.horn_failures(terminal_map(G))),
        "boundary of triangle components": (1, len(pi0(B2)), oracle.components(B2)),
        "hom two points": (4, internal_hom(E2, E2, Config(max_dim=N)).carrier.total.sizes[0],
                           oracle.hom_vertices(E2.proj, E2.proj)),
        "hom point to two points": (2, internal_hom(pt, E2, Config(max_dim=N)).carrier.total.sizes[0],
                                    oracle.hom_vertices(pt.proj, E2.proj)),
        "wedge sizes": (
            (3, 2),
            pushforward(v0, E2, Config(max_dim=N, fiber_cap=8)).carrier.total.nondeg_counts()[:2],
            _nondeg(oracle.pushforward_object(v0, E2.proj).source)[:2],
        ),
        "unit lands in pushforward": (
            oracle.pushforward_sizes(v0, identity(point(N))),
            pushforward(v0, over_itself(point(N)), Config(max_dim=N)).carrier.total.sizes,
            oracle.pushforward_sizes(v0, identity(point(N))),
        ),
        "adjunction bijection": (True, True, len(set(oracle.adjunction_counts(v0, E2.proj, identity(I)))) == 1),
        "eq two points": (2, eq_object(E2, E2, Config(max_dim=N)).total.sizes[0],
                          oracle.eq_vertices_discrete(E2.proj, E2.proj)),
        "eq point to two points": (0, eq_object(pt, E2, Config(max_dim=N)).total.sizes[0],
                                   oracle.eq_vertices_discrete(pt.proj, E2.proj)),
        "eq of empty or point": (2, eq_self(empty_or_point(N), Config(max_dim=N)).total.sizes[0],
                                 sum(oracle.eq_vertices_discrete(_fib(empty_or_point(N), a), _fib(empty_or_point(N), b))
                                     for a in range(2) for b in range(2))),
        "two points not univalent": (False, is_univalent(E2, Config(max_dim=N)).status == UNIVALENT,
                                     oracle.univalent_discrete(E2.proj)),
        "empty or point univalent": (True, is_univalent(empty_or_point(N), Config(max_dim=N)).status == UNIVALENT,
                                     oracle.univalent_discrete(empty_or_point(N).proj)),
    }
    cap1 = Config(max_dim=N, fiber_cap=1)
    for n in range(3):
        for label, p, e in (("id", pt, False), ("empty", SliceObject(terminal_map(empty(N))), True)):
            out[f"pp level {n} of {label}"] = (1, len(pp_level(p, n, cap1)), oracle.pp_level_cap1_over_point(n, N, e))
    return out


def _nondeg(X):
    """Nondegenerate counts by direct degeneracy images, independent of stored forms."""
    counts = []
    for n in range(X.max_dim + 1):
        if n == 0:
            counts.append(X.sizes[0])
            continue
        images = {X.degens[n - 1][i][y] for i in range(n) for y in range(X.sizes[n - 1])}
        counts.append(X.sizes[n] - len(images))
    return tuple(counts)


def _fib(E, b):
    """The fiber over vertex ``b`` as a map to the point."""
    return pullback_along(vertex(E.base, b), E).proj


def test_criterion_09_oracle_equivalence(record):
    t0 = time.time()
    checks = _derived_checks()
    wrong = [k for k, (claimed, lib, orc) in checks.items() if not (claimed == lib == orc)]
    dt = time.time() - t0
    record(f"{len(checks)} examples, {len(wrong)} discrepancies{' ' + str(wrong) if wrong else ''}, {dt:.1f}s")
    assert not wrong and dt < 120


def _run(argv):
    env = dict(os.environ, PYTHONHASHSEED=str(random.randrange(1, 10**6)))
    proc = subprocess.run([sys.executable, "-m", "kanforge.shell.cli", *argv, "--format", "machine"],
                          capture_output=True, env=env, cwd=ROOT, check=False)
    return proc.returncode, proc.stdout


def test_criterion_10_determinism(record):
    runs = [
        ["is-kan", str(DATA / "simplex1.json")],
        ["univalent", str(DATA / "two_points.json")],
        ["extend-horn", str(DATA / "constant_horn.json")],
        ["reconstruct", str(DATA / "constant_horn.json")],
        ["hom", str(DATA / "two_points.json")],
    ]
    same = 0
    for argv in runs:
        a, b = _run(argv), _run(argv)
        in_process = dumps(execute(argv)[1]).encode()
        same += a == b and a[1] == in_process and bool(json.loads(a[1]))
    record(f"{same}/{len(runs)} commands byte-identical across separate runs")
    assert same == len(runs)
