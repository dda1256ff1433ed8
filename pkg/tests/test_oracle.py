from pathlib import Path

import pytest

from helpers import two_points, vertex
from kanforge.errors import BudgetExhausted, InputError
from kanforge.shell import oracle
from kanforge.shell.cli import execute
from kanforge.sscore import boundary, codiscrete, discrete, identity, standard_simplex, terminal_map

DATA = Path(__file__).parent / "data"


def test_maps_between_intervals():
    D1 = standard_simplex(1, 2)
    assert oracle.count_maps(D1, D1) == 3


def test_hom_vertices_of_two_points():
    p = two_points().proj
    assert oracle.hom_vertices(p, p) == 4


def test_adjunction_bijection_on_vertex():
    D1 = standard_simplex(1, 2)
    i = vertex(D1, 0)
    left, right = oracle.adjunction_counts(i, two_points().proj, identity(D1))
    assert left == right


def test_adjunction_via_cli():
    code, rep, _ = execute(["oracle", "adjunction-bijection", str(DATA / "codiscrete.json"), "i", "p", "p"])
    assert code == 0
    assert rep["report"]["left"] == rep["report"]["right"] == 4


def test_simplex_counts():
    assert oracle.simplex_level_sizes(1, 3) == (2, 3, 4, 5)
    assert oracle.simplex_nondeg_counts(3) == (4, 6, 4, 1)


def test_degeneracy_normal_form_reorders():
    # s_0 s_1 = s_2 s_0
    assert oracle.degeneracy_normal_form((0, 1)) == (2, 0)


def test_components_and_failures():
    B, _ = boundary(2, 2)
    assert oracle.components(B) == 1
    assert oracle.boundary_failures(terminal_map(codiscrete(2, 2))) == []
    assert oracle.horn_failures(terminal_map(discrete(3, 2))) == []


def test_discrete_restrictions():
    with pytest.raises(InputError):
        oracle.univalent_discrete(terminal_map(standard_simplex(1, 2)))
    assert oracle.eq_vertices_discrete(terminal_map(discrete(3, 1)), terminal_map(discrete(3, 1))) == 6


def test_map_enumeration_limit():
    with pytest.raises(BudgetExhausted):
        list(oracle.all_maps(codiscrete(3, 2), codiscrete(3, 2), limit=5))


@pytest.mark.parametrize("n", [0, 1, 2])
@pytest.mark.parametrize("total_empty", [False, True])
def test_pp_cap_one_levels_are_singletons(n, total_empty):
    assert oracle.pp_level_cap1_over_point(n, 2, total_empty) == 1
