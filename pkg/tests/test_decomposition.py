import pytest
from hypothesis import given, settings

from simplext.decomposition import (
    Leaf,
    Node,
    decomposition_tree,
    degenerate_split,
    substitution_decompose,
)
from simplext.intervals import is_interval, is_simple, maximal_proper_intervals
from simplext.structure import (
    GRAPH,
    PERMUTATION,
    TOURNAMENT,
    antichain,
    arcs,
    chain,
    complete_graph,
    graph,
    perm_to_structure,
    restrict,
    structure_to_perm,
    transitive_tournament,
)
from strategies import any_binary, perm_structures, ternary


def _perm(s):
    return str(structure_to_perm(s))


def test_24513_decomposes_over_2413():
    d = substitution_decompose(perm_to_structure("24513"), PERMUTATION)
    assert _perm(d.quotient) == "2413"
    assert [_perm(b) for b in d.blocks] == ["1", "12", "1", "1"]
    assert d.parts == ((0,), (1, 2), (3,), (4,))
    assert d.block_map == {0: 0, 1: 1, 2: 1, 3: 2, 4: 3}
    assert not d.degenerate


def test_2143_is_a_sum_of_two_falls():
    d = substitution_decompose(perm_to_structure("2143"), PERMUTATION)
    # the two blocks sit one above the other, so the quotient rises
    assert _perm(d.quotient) == "12"
    assert [_perm(b) for b in d.blocks] == ["21", "21"]
    assert d.degenerate


def test_simple_structure_is_its_own_quotient():
    s = perm_to_structure("2413")
    d = substitution_decompose(s, PERMUTATION)
    assert d.quotient == s
    assert all(b.n == 1 for b in d.blocks)


def test_decompose_needs_two_elements():
    with pytest.raises(ValueError):
        substitution_decompose(chain(1))


def test_graph_split_takes_largest_component_first():
    g = graph(6, [(0, 1), (2, 3), (3, 4), (2, 4)])
    d = substitution_decompose(g, GRAPH)
    assert d.parts == ((0, 1, 5), (2, 3, 4))


def test_odd_chain_split_keeps_odd_top():
    d = substitution_decompose(transitive_tournament(5), TOURNAMENT)
    assert d.parts == ((0, 1), (2, 3, 4))


def test_degenerate_split_kinds():
    assert degenerate_split(complete_graph(4)).kind == "complete"
    assert degenerate_split(transitive_tournament(4)).kind == "linear"
    assert degenerate_split(perm_to_structure("2413")) is None


@pytest.mark.parametrize("s,cls,expected", [
    (perm_to_structure("1234"), PERMUTATION, "(increasing 0 1 2 3)"),
    (perm_to_structure("24513"), PERMUTATION, "(2413 0 (increasing 1 2) 3 4)"),
    (perm_to_structure("3412"), PERMUTATION, "(decreasing (increasing 0 1) (increasing 2 3))"),
    (graph(5, [(0, 1), (2, 3)]), GRAPH, "(union (join 0 1) (join 2 3) 4)"),
    (chain(3), None, "(chain 0 1 2)"),
    (antichain(3), None, "(antichain 0 1 2)"),
    (transitive_tournament(3), None, "(ordered-pair-chain 0 1 2)"),
])
def test_tree_serialization(s, cls, expected):
    assert decomposition_tree(s, cls).serialize() == expected


def test_singleton_tree_is_leaf():
    assert decomposition_tree(chain(1)) == Leaf(0)


def test_prime_label_for_simple_graph():
    p4 = graph(4, [(0, 1), (1, 2), (2, 3)])
    t = decomposition_tree(p4)
    assert t.label == "prime"
    assert t.leaves() == 4


def test_three_cycle_tree():
    t = decomposition_tree(arcs(3, [(0, 1), (1, 2), (2, 0)]))
    assert t.serialize() == "(prime 0 1 2)"


# ------------------------------------------------------------------ properties

def _check_decomposition(s):
    d = substitution_decompose(s)
    assert d.recompose() == s
    assert is_simple(d.quotient)
    assert d.quotient.n >= 2
    for part, block in zip(d.parts, d.blocks):
        assert restrict(s, part) == block
        assert is_interval(s, part)
    if d.quotient.n > 2:
        assert sorted(d.parts) == sorted(tuple(sorted(m)) for m in maximal_proper_intervals(s))


def _check_tree(s, t):
    assert t.leaves() == s.n
    assert sorted(_leaf_ids(t)) == list(range(s.n))
    if isinstance(t, Node):
        for child in t.children:
            assert is_interval(s, child.elements)
            _check_tree_within(s, child)


def _check_tree_within(s, t):
    if isinstance(t, Node):
        sub = restrict(s, t.elements)
        index = {e: i for i, e in enumerate(t.elements)}
        for child in t.children:
            assert is_interval(sub, [index[e] for e in child.elements])
            _check_tree_within(s, child)


def _leaf_ids(t):
    if isinstance(t, Leaf):
        return [t.element]
    return [e for c in t.children for e in _leaf_ids(c)]


@settings(max_examples=250, deadline=None)
@given(any_binary(2, 8))
def test_binary_decomposition_round_trip(case):
    _check_decomposition(case[1])


@settings(max_examples=150, deadline=None)
@given(perm_structures(2, 8))
def test_permutation_decomposition_round_trip(s):
    _check_decomposition(s)


@settings(max_examples=100, deadline=None)
@given(ternary(2, 5))
def test_ternary_decomposition_round_trip(s):
    _check_decomposition(s)


@settings(max_examples=200, deadline=None)
@given(any_binary(1, 8))
def test_tree_children_are_intervals(case):
    s = case[1]
    _check_tree(s, decomposition_tree(s))
