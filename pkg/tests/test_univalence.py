import pytest

from helpers import CFG2, empty_or_point, groupoid, over_point, two_points
from kanforge.config import Config
from kanforge.errors import InputError, Uncertified
from kanforge.lifting import is_fibration
from kanforge.shell import oracle
from kanforge.slice import SliceMap, SliceObject, over_itself, pullback_along, slice_identity
from kanforge.sscore import (
    codiscrete,
    compose,
    discrete,
    empty,
    identity,
    point,
    standard_simplex,
    subcomplex,
    terminal_map,
    yoneda,
)
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

CAP3 = CFG2.replace(fiber_cap=3)


# -- objects of equivalences ------------------------------------------------


def test_eq_of_two_points_has_two_vertices():
    E = two_points()
    eq = eq_object(E, E, CFG2)
    assert eq.total.sizes == (2, 2, 2)
    assert eq.total.sizes[0] == oracle.eq_vertices_discrete(E.proj, E.proj)


def test_eq_of_point_is_point():
    pt = over_point(point(2))
    assert eq_object(pt, pt, CFG2).total.sizes == (1, 1, 1)


def test_eq_of_point_and_two_points_is_empty():
    eq = eq_object(over_point(point(2)), two_points(), CFG2)
    assert eq.total.sizes == (0, 0, 0)
    assert oracle.eq_vertices_discrete(terminal_map(point(2)), two_points().proj) == 0


def test_eq_self_of_empty_or_point():
    E = empty_or_point()
    eq = eq_self(E, CFG2)
    assert eq.total.sizes[0] == 2
    for b in range(2):
        assert eq.s.comps[0][eq.delta.comps[0][b]] == b == eq.t.comps[0][eq.delta.comps[0][b]]


def test_eq_needs_fibrations():
    D1 = standard_simplex(1, 2)
    with pytest.raises(InputError):
        eq_object(SliceObject(yoneda(D1, 0, 0)), over_itself(D1), CFG2)


# -- univalence ----------------------------------------------------------------


def test_two_points_over_point_not_univalent():
    v = is_univalent(two_points(), CFG2)
    assert v.status == NOT_UNIVALENT and v.route == "pi0"
    assert oracle.univalent_discrete(two_points().proj) is False


@pytest.mark.parametrize("make", [lambda: over_point(point(2)), empty_or_point])
def test_univalent_examples(make):
    E = make()
    v = is_univalent(E, CFG2)
    assert v.status == UNIVALENT and v.route == "t-trivial-fibration"
    assert oracle.univalent_discrete(E.proj) is True


def test_empty_over_point_is_univalent():
    E = SliceObject(terminal_map(empty(2)))
    assert is_univalent(E, CFG2).status == UNIVALENT


def test_two_copies_of_a_point_not_univalent():
    E = over_itself(discrete(2, 2))
    v = is_univalent(E, CFG2)
    assert v.status == NOT_UNIVALENT
    assert oracle.univalent_discrete(E.proj) is False


def test_contractible_fiber_is_not_misjudged():
    # constant self-maps of the groupoid are equivalences the pipeline cannot certify
    with pytest.raises(Uncertified):
        is_univalent(over_point(groupoid()), CFG2)


def test_univalence_needs_kan_base():
    with pytest.raises(InputError):
        is_univalent(over_itself(standard_simplex(1, 2)), CFG2)


# -- univalent lifts -----------------------------------------------------------


def test_lift_identity_from_summand():
    B = discrete(2, 2)
    A, i = subcomplex(B, lambda n, x: B.keys[n][x][0] == 0)
    Eb2 = over_itself(B)
    L = univalent_lift(i, slice_identity(pullback_along(i, Eb2)), Eb2, CAP3)
    assert L.ok
    assert L.reports["weq"]["case"] == "trivial-fibration"
    assert is_fibration(L.source.proj, CAP3).ok


def test_lift_vertex_into_contractible_fiber():
    P = point(2)
    G = codiscrete(2, 2)
    Eb2 = SliceObject(terminal_map(G))
    i = identity(P)
    E2 = pullback_along(i, Eb2)
    V, v = subcomplex(E2.total, lambda n, x: E2.total.keys[n][x][1] == G.apply_op(0, 0, (0,) * (n + 1)))
    E1 = SliceObject(compose(E2.proj, v))
    L = univalent_lift(i, SliceMap(E1, E2, v), Eb2, CAP3)
    assert L.ok
    assert L.reports["weq"]["case"] == "trivial-cofibration"


def test_lift_along_vertex_of_interval():
    D1 = standard_simplex(1, 2)
    i = yoneda(D1, 0, 0)
    Eb2 = over_itself(D1)
    L = univalent_lift(i, slice_identity(pullback_along(i, Eb2)), Eb2, CAP3)
    assert L.ok
    assert L.reports["restriction"]["canonical_forms_agree"]
    assert not L.map.violations()


def test_lift_rejects_non_equivalence():
    P = point(2)
    Eb2 = SliceObject(terminal_map(discrete(2, 2)))
    i = identity(P)
    E2 = pullback_along(i, Eb2)
    V, v = subcomplex(E2.total, lambda n, x: E2.total.keys[n][x][1] == 0)
    with pytest.raises(InputError):
        univalent_lift(i, SliceMap(SliceObject(compose(E2.proj, v)), E2, v), Eb2, CAP3)


# -- the space of fibrations with an equivalence -------------------------------


@pytest.mark.parametrize("n", [0, 1, 2])
@pytest.mark.parametrize("total_empty", [False, True])
def test_pp_levels_at_cap_one(n, total_empty):
    cfg = Config(max_dim=2, fiber_cap=1)
    p = SliceObject(terminal_map(empty(2))) if total_empty else over_itself(point(2))
    lv = pp_level(p, n, cfg)
    assert len(lv) == oracle.pp_level_cap1_over_point(n, 2, total_empty)


@pytest.mark.parametrize("total_empty", [False, True])
def test_cap_one_probe_is_contractible(total_empty):
    cfg = Config(max_dim=2, fiber_cap=1)
    p = SliceObject(terminal_map(empty(2))) if total_empty else over_itself(point(2))
    rep = check_pp_contractible(p, cfg, up_to=2)
    assert rep.sizes == (1, 1, 1)
    assert rep.status == "certified" and rep.agree


@pytest.mark.slow
def test_cap_two_probe_for_two_points():
    p = over_point(discrete(2, 1))
    rep = check_pp_contractible(p, Config(max_dim=1, fiber_cap=2), up_to=2)
    assert rep.sizes == (4, 32, 512)
    assert rep.squares == (1, 16, 512)
    assert rep.status == "certified" and rep.agree
