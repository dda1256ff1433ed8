import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kanforge.errors import InputError
from kanforge.shell import oracle
from kanforge.sscore import (
    Simplex,
    SimplicialSet,
    boundary,
    compose,
    discrete,
    enumerate_maps,
    ez_decompose,
    horn,
    identity,
    monotone_maps,
    point,
    product,
    pullback,
    retruncate,
    standard_simplex,
    terminal_map,
    validate,
    yoneda,
)
from kanforge.sscore.generators import act_on_ez, ez_key, word_to_surjection
from kanforge.universe.samples import random_base


# -- generators ---------------------------------------------------------


def test_point_levels_are_singletons():
    assert standard_simplex(0, 3).sizes == (1, 1, 1, 1)


def test_interval_level_two_has_four_simplices():
    assert standard_simplex(1, 3).sizes[2] == 4
    assert standard_simplex(1, 3).sizes == oracle.simplex_level_sizes(1, 3)


def test_triangle_nondegenerate_counts():
    assert standard_simplex(2, 3).nondeg_counts()[:3] == (3, 3, 1)
    assert oracle.simplex_nondeg_counts(2) == (3, 3, 1)


def test_inner_horn_counts():
    H, incl = horn(2, 1, 2)
    assert H.nondeg_counts() == (3, 2, 0)
    assert incl.is_mono() and not incl.violations()


def test_boundary_of_interval_is_two_points():
    B, _ = boundary(1, 2)
    assert B.nondeg_counts() == (2, 0, 0)


def test_outer_horn_of_interval_is_a_vertex():
    H, incl = horn(1, 0, 2)
    assert H.nondeg_counts() == (1, 0, 0)
    assert incl.comps[0] == (0,)


def test_horn_rejects_bad_indices():
    with pytest.raises(InputError):
        horn(2, 3, 2)


def test_simplex_above_bound_has_no_top():
    D = standard_simplex(3, 2)
    assert D.sizes == oracle.simplex_level_sizes(3, 2)


# -- products and pullbacks ---------------------------------------------


def test_product_with_point_is_iso():
    X = standard_simplex(2, 2)
    P, p1, p2 = product(point(2), X)
    assert p2.is_iso()


def test_square_has_two_nondegenerate_triangles():
    D1 = standard_simplex(1, 2)
    P, _, _ = product(D1, D1)
    assert P.nondeg_counts() == (4, 5, 2)
    assert validate(P) == []


def test_two_points_times_interval():
    P, _, _ = product(discrete(2, 2), standard_simplex(1, 2))
    assert P.nondeg_counts() == (4, 2, 0)
    assert oracle.components(P) == 2


def test_pullback_of_identities():
    X = standard_simplex(1, 2)
    P, a, b = pullback(identity(X), identity(X))
    assert a.is_iso() and b.is_iso()


def test_pullback_of_two_points_along_interval():
    D1 = standard_simplex(1, 2)
    P, _, _ = pullback(terminal_map(D1), terminal_map(discrete(2, 2)))
    assert P.nondeg_counts() == (4, 2, 0)
    assert oracle.components(P) == 2


def test_pullback_of_vertex_along_itself():
    D1 = standard_simplex(1, 2)
    v = yoneda(D1, 0, 0)
    P, _, _ = pullback(v, v)
    assert P.sizes == (1, 1, 1)


# -- normal forms --------------------------------------------------------


def test_nondegenerate_is_its_own_normal_form():
    D = standard_simplex(2, 2)
    top = D.index(2, (0, 1, 2))
    root, word = ez_decompose(Simplex(D, 2, top))
    assert (root.dim, root.id, word) == (2, top, ())


def test_single_degeneracy_normal_form():
    D1 = standard_simplex(1, 2)
    e = D1.degens[0][0][1]
    root, word = ez_decompose(Simplex(D1, 1, e))
    assert (root.dim, root.id, word) == (0, 1, (0,))


def test_double_degeneracy_normal_form():
    P = point(2)
    x = P.degens[1][1][P.degens[0][0][0]]
    root, word = ez_decompose(Simplex(P, 2, x))
    assert (root.dim, root.id, word) == (0, 0, (1, 0))
    assert oracle.degeneracy_normal_form((1, 0)) == (1, 0)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4))
def test_normal_form_matches_identity_sorting(word):
    # build s_{w0} ... s_{wk} on the vertex of Delta[0] when indices are legal
    n = 0
    for i in reversed(word):
        if i > n:
            return
        n += 1
    P = point(n)
    x = P.apply_word(0, 0, tuple(word))
    _, _, w = P.ez[n][x]
    assert w == oracle.degeneracy_normal_form(tuple(word))


@given(st.integers(0, 2), st.data())
def test_surjection_of_word_matches_operator(n, data):
    D = standard_simplex(n, 3)
    m = data.draw(st.integers(n, 3))
    x = D.index(n, tuple(range(n + 1)))
    # a random degeneracy word raising dimension n to m, normalised
    word = []
    d = n
    while d < m:
        word.append(data.draw(st.integers(0, d)))
        d += 1
    word = list(reversed(word))
    y = D.apply_word(n, x, tuple(word))
    sigma = word_to_surjection(m, tuple(oracle.degeneracy_normal_form(tuple(word))))
    assert D.apply_op(n, x, sigma) == y


# -- maps ---------------------------------------------------------------


def test_maps_from_point_to_interval():
    assert len(enumerate_maps(point(2), standard_simplex(1, 2))) == 2


def test_maps_interval_to_interval():
    D1 = standard_simplex(1, 2)
    assert len(enumerate_maps(D1, D1)) == 3 == oracle.count_maps(D1, D1)


def test_maps_boundary_to_two_points():
    B, _ = boundary(1, 2)
    assert len(enumerate_maps(B, discrete(2, 2))) == 4 == oracle.count_maps(B, discrete(2, 2))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_map_counts_agree_with_oracle(seed):
    rng = random.Random(seed)
    X = random_base(rng, 2, max_nondeg=5, top=2)
    Y = random_base(rng, 2, max_nondeg=6, top=2)
    assert len(enumerate_maps(X, Y)) == oracle.count_maps(X, Y)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_operators_compose(seed):
    rng = random.Random(seed)
    X = random_base(rng, 3)
    n = rng.randrange(4)
    if not X.sizes[n]:
        return
    x = rng.randrange(X.sizes[n])
    m = rng.randrange(4)
    k = rng.randrange(4)
    alpha = rng.choice(monotone_maps(m, n))
    beta = rng.choice(monotone_maps(k, m))
    lhs = X.apply_op(m, X.apply_op(n, x, alpha), beta)
    rhs = X.apply_op(n, x, tuple(alpha[b] for b in beta))
    assert lhs == rhs


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_ez_keys_act_like_operators(seed):
    rng = random.Random(seed)
    X = random_base(rng, 3)
    n = rng.randrange(4)
    x = rng.randrange(X.sizes[n])
    m = rng.randrange(4)
    alpha = rng.choice(monotone_maps(m, n))
    assert act_on_ez(X, ez_key(X, n, x), alpha) == ez_key(X, m, X.apply_op(n, x, alpha))


# -- validation ---------------------------------------------------------


def test_generated_objects_validate():
    assert validate(standard_simplex(2, 3)) == []


def test_broken_identity_is_cited():
    D = standard_simplex(2, 2)
    faces = list(D.faces)
    lvl2 = [list(t) for t in faces[2]]
    top = D.index(2, (0, 1, 2))
    lvl2[0][top] = D.index(1, (0, 1))
    faces[2] = tuple(tuple(t) for t in lvl2)
    bad = SimplicialSet(2, D.sizes, tuple(faces), D.degens)
    found = validate(bad)
    assert found and any(v.level == 2 for v in found)


def test_product_output_validates():
    D1 = standard_simplex(1, 3)
    assert validate(product(D1, D1)[0]) == []


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_random_bases_validate(seed):
    X = random_base(random.Random(seed), 3)
    assert validate(X) == []
    assert oracle.components(X) >= 1


# -- retruncation --------------------------------------------------------


@pytest.mark.parametrize("bound", [1, 2, 3, 4])
def test_retruncate_keeps_shared_levels(bound):
    X = standard_simplex(2, 2)
    Y = retruncate(X, bound)
    shared = min(bound, 2)
    assert Y.sizes[: shared + 1] == X.sizes[: shared + 1]
    assert validate(Y) == []
    if bound > 2:
        assert Y.sizes == oracle.simplex_level_sizes(2, bound)


def test_retruncate_matches_standard_simplex_above():
    assert retruncate(standard_simplex(1, 1), 3).sizes == standard_simplex(1, 3).sizes


def test_yoneda_is_simplicial():
    X = standard_simplex(2, 2)
    f = yoneda(X, 1, X.index(1, (0, 2)))
    assert not f.violations()
    assert compose(terminal_map(X), f).comps == terminal_map(f.source).comps
