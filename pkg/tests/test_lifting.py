import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import CFG2, CFG3, edges_over_interval, groupoid, vertex
from kanforge.config import Config
from kanforge.errors import InputError
from kanforge.lifting import (
    Exhausted,
    Filler,
    LiftingProblem,
    Refuted,
    is_fibration,
    is_kan,
    is_trivial_fibration,
    solve_lifting,
)
from kanforge.shell import oracle
from kanforge.sscore import (
    SimplicialMap,
    boundary,
    compose,
    discrete,
    horn,
    identity,
    point,
    standard_simplex,
    terminal_map,
    yoneda,
)
from kanforge.universe.samples import random_base, random_covering, random_subobject


def _const(A, Y, y0):
    return SimplicialMap(A, Y, tuple(tuple(Y.apply_op(0, y0, (0,) * (n + 1)) for _ in range(A.sizes[n]))
                                     for n in range(A.max_dim + 1)))


def _boundary_square(p, ends):
    B, incl = boundary(1, p.target.max_dim)
    Y = p.source
    top = SimplicialMap(B, Y, tuple(
        tuple(Y.apply_op(0, ends[B.keys[n][a][0]], (0,) * (n + 1)) for a in range(B.sizes[n]))
        for n in range(B.max_dim + 1)
    ))
    bottom = yoneda(p.target, 1, p.target.apply_op(0, 0, (0, 0))) if p.target.sizes[0] == 1 else None
    return LiftingProblem(incl, p, top, bottom)


# -- solve_lifting ------------------------------------------------------


def test_inner_horn_against_terminal_map_fills():
    H, incl = horn(2, 1, 2)
    D2 = standard_simplex(2, 2)
    pr = LiftingProblem(incl, terminal_map(D2), incl, terminal_map(D2))
    out = solve_lifting(pr, CFG2)
    assert isinstance(out, Filler)
    assert compose(out.diagonal, incl).comps == incl.comps


def test_distinct_endpoints_into_two_points_refuted():
    p = terminal_map(discrete(2, 2))
    out = solve_lifting(_boundary_square(p, (0, 1)), CFG2)
    assert isinstance(out, Refuted) and out.exhaustive
    assert oracle.unfillable_squares(p, 1, None)


def test_equal_endpoints_fill_with_degenerate_edge():
    two = discrete(2, 2)
    p = terminal_map(two)
    out = solve_lifting(_boundary_square(p, (1, 1)), CFG2)
    assert isinstance(out, Filler)
    D1 = out.diagonal.source
    top = D1.index(1, (0, 1))
    assert out.diagonal.comps[1][top] == two.degens[0][0][1]


def test_non_commuting_square_rejected():
    p = terminal_map(discrete(2, 2))
    pr = _boundary_square(p, (0, 1))
    bad = LiftingProblem(pr.left, identity(p.source), pr.top, pr.bottom)
    with pytest.raises(InputError):
        solve_lifting(bad, CFG2)


def test_tiny_budget_reports_exhausted():
    G = groupoid(3)
    H, incl = horn(3, 1, 3)
    D3 = standard_simplex(3, 3)
    top = SimplicialMap(H, G, tuple(tuple(G.index(n, tuple(k[j] % 2 for j in range(n + 1))) for k in H.keys[n])
                                    for n in range(4)))
    out = solve_lifting(LiftingProblem(incl, terminal_map(G), top, terminal_map(D3)), Config(max_dim=3, search_budget=1))
    assert isinstance(out, (Exhausted, Filler))


# -- bounded checks -----------------------------------------------------


def test_identity_is_a_fibration():
    assert is_fibration(identity(point(2)), CFG2).ok


def test_two_edges_over_interval_fibration_to_dim_three():
    p = edges_over_interval(3).proj
    assert is_fibration(p, CFG3).ok
    assert oracle.horn_failures(p) == []


def test_vertex_inclusion_fails_at_first_horn():
    D1 = standard_simplex(1, 2)
    rep = is_fibration(yoneda(D1, 0, 0), CFG2)
    assert not rep.ok
    assert ("horn", 1, 0) in {f.generator for f in rep.failures}
    assert (1, 0) in oracle.horn_failures(yoneda(D1, 0, 0))


def test_identity_is_trivial_fibration():
    assert is_trivial_fibration(identity(standard_simplex(1, 2)), CFG2).ok


def test_two_points_fail_boundary_of_interval():
    rep = is_trivial_fibration(terminal_map(discrete(2, 2)), CFG2)
    assert [f.generator for f in rep.failures] == [("boundary", 1)]
    assert oracle.boundary_failures(terminal_map(discrete(2, 2))) == [1]


def test_interval_fails_boundary_with_reversed_endpoints():
    D1 = standard_simplex(1, 2)
    rep = is_trivial_fibration(terminal_map(D1), CFG2)
    (f,) = rep.failures
    assert f.generator == ("boundary", 1)
    B, _ = boundary(1, 2)
    ends = {B.keys[0][a][0]: D1.keys[0][f.top[0][a]][0] for a in range(2)}
    assert ends == {0: 1, 1: 0}


def test_discrete_sets_are_kan():
    assert is_kan(discrete(3, 3), CFG3).ok


def test_interval_fails_outer_horn():
    rep = is_kan(standard_simplex(1, 2), CFG2)
    assert rep.failures[0].generator == ("horn", 2, 0)
    assert oracle.horn_failures(terminal_map(standard_simplex(1, 2))) == [(2, 0), (2, 2)]


def test_groupoid_nerve_is_kan():
    assert is_kan(groupoid(2), CFG2).ok
    assert oracle.horn_failures(terminal_map(groupoid(2))) == []


def test_report_never_claims_above_bound():
    rep = is_kan(groupoid(2), CFG2, up_to=1)
    assert rep.verified_dim == 1
    assert all(g[1] <= 1 for g in rep.generators)


def test_budget_exhaustion_is_unknown_not_failure():
    rep = is_kan(groupoid(3), Config(max_dim=3, search_budget=2))
    assert not rep.failures
    assert rep.status in ("unknown", "certified")


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_horn_failures_agree_with_oracle(seed):
    rng = random.Random(seed)
    X = random_base(rng, 2, max_nondeg=7, top=2)
    p = random_subobject(rng, X) if rng.random() < 0.5 else random_covering(rng, X, 2)
    rep = is_fibration(p, CFG2)
    assert {g[1:] for g in (f.generator for f in rep.failures)} == set(oracle.horn_failures(p))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_boundary_failures_agree_with_oracle(seed):
    rng = random.Random(seed)
    X = random_base(rng, 2, max_nondeg=7, top=2)
    p = random_subobject(rng, X) if rng.random() < 0.5 else random_covering(rng, X, 2)
    rep = is_trivial_fibration(p, CFG2)
    assert {f.generator[1] for f in rep.failures} == set(oracle.boundary_failures(p))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_fillers_verify(seed):
    rng = random.Random(seed)
    G = groupoid(2)
    n = rng.randint(1, 2)
    k = rng.randint(0, n)
    H, incl = horn(n, k, 2)
    vals = [rng.randrange(2) for _ in range(n + 1)]
    top = SimplicialMap(H, G, tuple(tuple(G.index(m, tuple(vals[j] for j in key)) for key in H.keys[m])
                                    for m in range(3)))
    out = solve_lifting(LiftingProblem(incl, terminal_map(G), top, terminal_map(standard_simplex(n, 2))), CFG2)
    assert isinstance(out, Filler)
    assert not out.diagonal.violations()
    assert _const(point(2), G, 0).comps[0] == (0,)
    assert vertex(G, 1).comps[0] == (1,)
