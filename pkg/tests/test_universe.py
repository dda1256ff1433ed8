import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import CFG2, edges_over_interval, groupoid, two_points, vertex, wedge
from kanforge.config import Config
from kanforge.errors import BudgetExhausted, InputError
from kanforge.lifting import is_fibration
from kanforge.slice import SliceObject
from kanforge.sscore import (
    SimplicialMap,
    discrete,
    horn,
    identity,
    point,
    product,
    standard_simplex,
    yoneda,
)
from kanforge.universe import (
    CERTIFIED,
    FAILED,
    UniverseSimplex,
    WellOrderedMorphism,
    canonicalize,
    classify,
    extend_horn_in_U,
    horn_of,
    in_U,
    membership_report,
    order_preserving_iso,
    pullback_wom,
    reconstruct,
    relabelling,
    small_fibrations,
    universe_apply,
    well_order,
)
from kanforge.universe.samples import random_base, random_base_change, random_covering, random_order


def _top(u_base, n):
    return u_base.index(n, tuple(range(n + 1)))


# -- well orders ----------------------------------------------------------


def test_identity_has_singleton_orders():
    w = well_order(identity(point(2)), CFG2)
    assert w.orders == (((0,),),) * 3


def test_two_points_ordered_by_id():
    w = well_order(two_points().proj, CFG2)
    assert w.orders[0] == ((0, 1),)


def test_product_fibers_are_ordered_pairs():
    w = well_order(edges_over_interval().proj, CFG2)
    assert all(len(seq) == 2 and list(seq) == sorted(seq) for lvl in w.orders for seq in lvl)


def test_cap_is_enforced():
    with pytest.raises(InputError):
        well_order(SliceObject(product(discrete(4, 2), point(2))[2]).proj, CFG2)


# -- canonical forms -----------------------------------------------------


def test_canonicalize_is_idempotent():
    c = canonicalize(well_order(edges_over_interval().proj, CFG2))
    assert canonicalize(c).same_form(c)


def test_reversed_order_relabels_by_position():
    p = two_points().proj
    w = WellOrderedMorphism(p, (((1, 0),),) * 3)
    r = relabelling(w)
    c = canonicalize(w)
    assert c.total.keys[0][r.comps[0][1]] == (0, 0)
    assert c.total.keys[0][r.comps[0][0]] == (0, 1)


def test_order_preserving_iso_gives_same_form():
    p = edges_over_interval().proj
    rng = random.Random(3)
    a = random_order(rng, p)
    b = random_order(rng, p)
    assert canonicalize(a).same_form(canonicalize(b)) == (order_preserving_iso(a, b) is not None)
    assert canonicalize(a).same_form(canonicalize(canonicalize(a)))


# -- classification ------------------------------------------------------


def test_identity_classifies_to_singleton_vertex():
    c = classify(well_order(identity(point(2)), CFG2))
    assert c.assign[0][0].fiber_sizes() == [1, 1]


def test_two_points_classify_to_two_element_vertex():
    c = classify(well_order(two_points().proj, CFG2))
    assert c.assign[0][0].fiber_sizes() == [2, 2]


def test_wedge_classifies_to_edge_with_sizes():
    W = wedge()
    c = classify(well_order(W.proj, CFG2.replace(fiber_cap=8)))
    D1 = W.base
    u = c.assign[1][_top(D1, 1)]
    assert u.fiber_sizes() == [2, 1, 2]
    assert universe_apply((0,), u) == c.assign[0][0]
    assert universe_apply((1,), u) == c.assign[0][1]


@pytest.mark.parametrize("build", ["identity", "two", "wedge"])
def test_round_trip_examples(build):
    cfg = CFG2.replace(fiber_cap=8)
    f = {"identity": lambda: identity(point(2)), "two": lambda: two_points().proj,
         "wedge": lambda: wedge().proj}[build]()
    w = well_order(f, cfg)
    assert canonicalize(reconstruct(classify(w))).same_form(canonicalize(w))


def test_operators_on_universe_simplices():
    D1 = standard_simplex(1, 2)
    P, _, pr = product(discrete(2, 2), D1)
    c = classify(well_order(pr, CFG2))
    u = c.assign[1][_top(D1, 1)]
    assert universe_apply((0, 1), u) == u
    assert universe_apply((0,), u) == c.assign[0][0] == c.assign[0][1]
    W = wedge()
    cw = classify(well_order(W.proj, CFG2.replace(fiber_cap=8)))
    assert universe_apply((1,), cw.assign[1][_top(W.base, 1)]).fiber_sizes() == [1, 1]


def test_membership_of_constant_simplex():
    D1 = standard_simplex(1, 2)
    P, _, pr = product(discrete(2, 2), D1)
    u = classify(well_order(pr, CFG2)).assign[1][_top(D1, 1)]
    assert in_U(u, CFG2) == CERTIFIED


def test_membership_failure_has_witness():
    D1 = standard_simplex(1, 2)
    u = classify(well_order(yoneda(D1, 0, 0), CFG2)).assign[1][_top(D1, 1)]
    assert in_U(u, CFG2) == FAILED
    rep = membership_report(u)
    assert rep.failures[0].generator == ("horn", 1, 0)


def test_membership_of_singleton_simplex():
    D2 = standard_simplex(2, 2)
    u = classify(well_order(identity(D2), CFG2)).assign[2][_top(D2, 2)]
    assert in_U(u, CFG2) == CERTIFIED


def test_universe_simplex_needs_simplex_base():
    with pytest.raises(InputError):
        UniverseSimplex(1, canonicalize(well_order(two_points().proj, CFG2)))


# -- horn extension ---------------------------------------------------------


def test_constant_singleton_horn_fills():
    H, _ = horn(2, 1, 2)
    u = extend_horn_in_U(classify(well_order(identity(H), CFG2)), CFG2)
    assert u.fiber_sizes() == [1, 1, 1, 1]
    D2 = standard_simplex(2, 2)
    assert u == classify(well_order(identity(D2), CFG2)).assign[2][_top(D2, 2)]


@pytest.mark.parametrize("n,k", [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2)])
def test_product_horn_fills_with_product(n, k):
    D = standard_simplex(n, 2)
    P, _, pr = product(discrete(2, 2), D)
    u = classify(well_order(pr, CFG2)).assign[n][_top(D, n)]
    out = extend_horn_in_U(horn_of(u, k), CFG2)
    assert out == u


def test_non_minimal_horn_fills_compatibly():
    cfg = Config(max_dim=2, fiber_cap=8)
    H, incl = horn(2, 1, 2)
    P, _, pr = product(groupoid(2), H)
    c = classify(well_order(pr, cfg))
    out = extend_horn_in_U(c, cfg)
    assert in_U(out, cfg) == CERTIFIED
    for i in (0, 2):
        face = tuple(j for j in range(3) if j != i)
        edge = H.index(1, face)
        assert universe_apply(face, out) == c.assign[1][edge]


def test_horn_extension_rejects_non_horn():
    with pytest.raises(InputError):
        extend_horn_in_U(classify(well_order(two_points().proj, CFG2)), CFG2)


# -- enumeration of small fibrations ----------------------------------------


@pytest.mark.parametrize("base,N,cap,count", [
    (0, 1, 1, 2), (0, 1, 2, 6), (0, 2, 1, 2), (0, 2, 2, 8), (1, 1, 2, 59), (2, 1, 1, 2),
])
def test_small_fibration_counts(base, N, cap, count):
    X = standard_simplex(base, N)
    got = list(small_fibrations(X, Config(max_dim=N, fiber_cap=cap)))
    assert len(got) == count
    assert len({w.canonical_key for w in got}) == count


def test_small_fibrations_are_fibrations():
    cfg = Config(max_dim=1, fiber_cap=2)
    for w in small_fibrations(standard_simplex(1, 1), cfg):
        assert is_fibration(w.f, cfg).ok


def test_enumeration_budget():
    with pytest.raises(BudgetExhausted):
        list(small_fibrations(standard_simplex(1, 1), Config(max_dim=1, fiber_cap=2, search_budget=3)))


# -- properties ---------------------------------------------------------------


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_round_trip_random(seed):
    rng = random.Random(seed)
    X = random_base(rng, 3)
    w = random_order(rng, random_covering(rng, X, 3))
    assert canonicalize(reconstruct(classify(w))).same_form(canonicalize(w))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_naturality_random(seed):
    rng = random.Random(seed)
    X = random_base(rng, 3)
    w = random_order(rng, random_covering(rng, X, 3))
    t = random_base_change(rng, X)
    assert classify(pullback_wom(t, w)).same_as(classify(w).precompose(t))
    assert isinstance(vertex(X, 0), SimplicialMap)
