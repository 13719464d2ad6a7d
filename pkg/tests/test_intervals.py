from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simplext.intervals import (
    all_intervals,
    interval_closure,
    is_interval,
    is_simple,
    maximal_proper_intervals,
)
from simplext.oracle import exhaustive_is_simple, raw_is_interval
from simplext.structure import (
    arcs,
    chain,
    complete_graph,
    graph,
    hypergraph_structure,
    kary_structure,
    perm_to_structure,
    transitive_tournament,
)
from strategies import any_binary, perm_structures, ternary

# Frozen from the brute-force subset scan in simplext.oracle: the only non-trivial
# interval of 24513 is the pair of positions holding 4 and 5.
INTERVALS_24513 = [{1, 2}]


def _brute_intervals(s):
    return [set(c) for k in range(2, s.n) for c in combinations(range(s.n), k) if raw_is_interval(s, c)]


def test_frozen_intervals_of_24513_still_match_oracle():
    assert _brute_intervals(perm_to_structure("24513")) == INTERVALS_24513


def test_3124_middle_pair_is_interval():
    assert is_interval(perm_to_structure("3124"), {1, 2})


def test_singletons_are_intervals():
    s = perm_to_structure("2413")
    for e in range(4):
        assert is_interval(s, {e}).is_interval


def test_2413_pair_is_not_interval_and_has_witness():
    r = is_interval(perm_to_structure("2413"), {0, 1})
    assert not r
    name, t, (x, y) = r.witness
    # the witness tuple leaves the set and breaks when x is replaced by y
    rel = perm_to_structure("2413").relation(name)
    assert t in rel
    assert tuple(y if e == x else e for e in t) not in rel
    assert any(e not in {0, 1} for e in t)


def test_out_of_range_subset():
    with pytest.raises(ValueError):
        is_interval(chain(2), {5})


def test_closure_examples():
    assert interval_closure(perm_to_structure("24513"), {1, 2}) == {1, 2}
    assert interval_closure(perm_to_structure("2413"), {0, 1}) == {0, 1, 2, 3}
    assert interval_closure(perm_to_structure("2413"), {3}) == {3}


def test_simple_examples():
    assert is_simple(perm_to_structure("2413"))
    assert is_simple(chain(2))
    assert is_simple(graph(2, []))
    assert not is_simple(complete_graph(3))
    assert not is_simple(transitive_tournament(4))


def test_no_simple_four_vertex_tournament():
    from simplext.oracle import enumerate_structures
    from simplext.structure import TOURNAMENT

    assert not any(is_simple(t) for t in enumerate_structures(TOURNAMENT, 4))


def test_maximal_proper_intervals_examples():
    assert sorted(map(sorted, maximal_proper_intervals(perm_to_structure("24513")))) == [[0], [1, 2], [3], [4]]
    assert sorted(map(sorted, maximal_proper_intervals(graph(3, [(0, 1)])))) == [[0, 1], [2]]
    three_cycle = arcs(3, [(0, 1), (1, 2), (2, 0)])
    assert sorted(map(sorted, maximal_proper_intervals(three_cycle))) == [[0], [1], [2]]


def test_ternary_intervals_use_every_coordinate():
    # (0, 1, 2) holds but (0, 2, 2) does not, and 0 lies outside {1, 2}
    s = kary_structure(3, 3, [(0, 1, 2)])
    assert not is_interval(s, {1, 2})
    assert raw_is_interval(s, {1, 2}) is False
    h = hypergraph_structure(4, 3, [(0, 1, 2)])
    # a hyperedge separates two of its members from each other through the third
    assert not is_interval(h, {0, 1})
    assert is_interval(h, {0, 1, 2})


# ------------------------------------------------------------------ properties

def _random_intervals(s, draw):
    seeds = draw(st.lists(st.sets(st.integers(0, s.n - 1), min_size=1), min_size=2, max_size=2))
    return [interval_closure(s, seed) for seed in seeds]


@settings(max_examples=200, deadline=None)
@given(any_binary(1, 7), st.data())
def test_interval_lattice(case, data):
    _, s = case
    i, j = _random_intervals(s, data.draw)
    assert is_interval(s, i) and is_interval(s, j)
    if i & j:
        assert is_interval(s, i & j)
        assert is_interval(s, i | j)
    if not j < i:
        assert is_interval(s, i - j)


def test_difference_with_nested_interval_can_fail():
    # {0, 1, 4} and {0} are intervals, {1, 4} is not: nesting has to be excluded
    s = graph(5, [(0, 4)])
    assert is_interval(s, {0, 1, 4}) and is_interval(s, {0})
    assert not is_interval(s, {1, 4})


@settings(max_examples=150, deadline=None)
@given(any_binary(1, 6), st.data())
def test_closure_is_least_interval(case, data):
    _, s = case
    seed = data.draw(st.sets(st.integers(0, s.n - 1), min_size=1))
    closure = interval_closure(s, seed)
    assert seed <= closure
    assert raw_is_interval(s, closure)
    for other in all_intervals(s):
        if seed <= other:
            assert closure <= other


@settings(max_examples=100, deadline=None)
@given(ternary(1, 5), st.data())
def test_ternary_closure_is_an_interval(s, data):
    seed = data.draw(st.sets(st.integers(0, s.n - 1), min_size=1))
    assert raw_is_interval(s, interval_closure(s, seed))


@settings(max_examples=300, deadline=None)
@given(st.one_of(any_binary(1, 6).map(lambda c: c[1]), perm_structures(1, 6), ternary(1, 5)))
def test_is_simple_matches_subset_scan(s):
    assert is_simple(s) == exhaustive_is_simple(s)


@settings(max_examples=100, deadline=None)
@given(any_binary(2, 7))
def test_maximal_intervals_cover_and_are_maximal(case):
    _, s = case
    parts = maximal_proper_intervals(s)
    assert set().union(*parts) == set(range(s.n))
    everything = [set(i) for i in all_intervals(s) if len(i) < s.n]
    for p in parts:
        assert is_interval(s, p)
        assert not any(p < other for other in everything)
    if not any(a & b for a, b in combinations(parts, 2)):
        assert sum(map(len, parts)) == s.n
