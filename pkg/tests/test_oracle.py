import pytest
from hypothesis import given, settings

from simplext.extensions import extend
from simplext.oracle import (
    SearchBudget,
    SearchSpaceTooLarge,
    enumerate_extensions,
    enumerate_structures,
    exhaustive_is_simple,
    find_one_point_extension,
    minimal_extension_size,
)
from simplext.structure import (
    DIGRAPH,
    GRAPH,
    PERMUTATION,
    POSET,
    TOURNAMENT,
    arcs,
    complete_digraph,
    complete_graph,
    hypergraph,
    perm_to_structure,
    structure_to_perm,
    transitive_tournament,
    validate,
)
from strategies import graphs, tournaments

# Frozen counts from the enumerator: labelled posets on 1..5 elements.
LABELLED_POSETS = [1, 3, 19, 219, 4231]


def test_simple_permutations_of_length_four():
    simple = sorted(str(structure_to_perm(s)) for s in enumerate_structures(PERMUTATION, 4)
                    if exhaustive_is_simple(s))
    assert simple == ["2413", "3142"]


def test_no_simple_four_vertex_tournament():
    ts = list(enumerate_structures(TOURNAMENT, 4))
    assert len(ts) == 64
    assert not any(exhaustive_is_simple(t) for t in ts)


def test_two_element_structures_are_simple():
    for cls in (GRAPH, TOURNAMENT, DIGRAPH, POSET, PERMUTATION):
        assert all(exhaustive_is_simple(s) for s in enumerate_structures(cls, 2))


@pytest.mark.parametrize("cls,n,count", [
    (TOURNAMENT, 3, 8),
    (GRAPH, 2, 2),
    (PERMUTATION, 3, 6),
    (DIGRAPH, 2, 4),
])
def test_enumeration_counts(cls, n, count):
    found = list(enumerate_structures(cls, n))
    assert len(found) == count
    assert len(set(found)) == count
    assert all(validate(s, cls) == [] for s in found)


def test_poset_counts():
    assert [sum(1 for _ in enumerate_structures(POSET, n)) for n in range(1, 6)] == LABELLED_POSETS


def test_enumeration_limits():
    with pytest.raises(SearchSpaceTooLarge):
        list(enumerate_structures(PERMUTATION, 12, limit=1000))
    with pytest.raises(SearchSpaceTooLarge):
        list(enumerate_structures(POSET, 8))


def test_oracle_limit():
    with pytest.raises(SearchSpaceTooLarge):
        exhaustive_is_simple(complete_graph(13))


@pytest.mark.parametrize("n,expected", [(2, 1), (3, 2), (4, 1), (5, 2), (6, 1), (7, 2)])
def test_chain_minimum(n, expected):
    budget = SearchBudget(2, min_added=1)
    assert minimal_extension_size(transitive_tournament(n), TOURNAMENT, budget) == expected


def test_already_simple_needs_nothing():
    assert minimal_extension_size(transitive_tournament(2), TOURNAMENT, SearchBudget(2)) == 0


def test_complete_graph_minima():
    assert minimal_extension_size(complete_graph(3), GRAPH, SearchBudget(2)) == 2
    assert minimal_extension_size(complete_graph(7), GRAPH, SearchBudget(2)) is None
    assert minimal_extension_size(complete_graph(7), GRAPH, SearchBudget(3)) == 3


def test_identity_minima():
    assert minimal_extension_size(perm_to_structure("123"), PERMUTATION, SearchBudget(2)) == 2
    assert minimal_extension_size(perm_to_structure("1234"), PERMUTATION, SearchBudget(3)) == 3


def test_complete_digraph_three():
    assert minimal_extension_size(complete_digraph(3), DIGRAPH, SearchBudget(1)) == 1


def test_one_point_witnesses():
    w = find_one_point_extension(transitive_tournament(2), TOURNAMENT)
    assert w is not None
    assert w.extended == arcs(3, [(0, 1), (1, 2), (2, 0)])
    assert find_one_point_extension(transitive_tournament(4), TOURNAMENT) is not None
    assert find_one_point_extension(transitive_tournament(5), TOURNAMENT) is None


def test_candidate_cap():
    with pytest.raises(SearchSpaceTooLarge):
        list(enumerate_extensions(complete_graph(6), GRAPH, 2, max_candidates=10))


def test_extension_enumeration_restricts_back():
    s = perm_to_structure("132")
    exts = list(enumerate_extensions(s, PERMUTATION, 1))
    # four gaps for the new position, four for its value
    assert len(exts) == 16
    assert all(e.restore() == s for e in exts)


def test_hypergraph_extensions_stay_hypergraphs():
    from simplext.structure import hypergraph_structure

    h = hypergraph_structure(3, 3, [(0, 1, 2)])
    exts = list(enumerate_extensions(h, hypergraph(3), 1))
    assert len(exts) == 2 ** 3
    assert all(validate(e.extended, hypergraph(3)) == [] for e in exts)


@settings(max_examples=25, deadline=None)
@given(tournaments(1, 4))
def test_oracle_dominance_tournaments(t):
    # the construction may add more than the minimum, never fewer
    m = minimal_extension_size(t, TOURNAMENT, SearchBudget(2))
    assert m is not None
    assert m <= extend(t, TOURNAMENT).added_count


@settings(max_examples=25, deadline=None)
@given(graphs(1, 4))
def test_oracle_dominance_graphs(g):
    m = minimal_extension_size(g, GRAPH, SearchBudget(3))
    assert m is not None
    assert m <= extend(g, GRAPH).added_count


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(-1)
