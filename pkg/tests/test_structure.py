import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simplext.structure import (
    ARC_REL,
    DIGRAPH,
    GRAPH,
    ORDER_REL,
    ORIENTED,
    PERMUTATION,
    POSET,
    TOURNAMENT,
    VALUE_REL,
    AxiomViolation,
    MalformedStructure,
    Permutation,
    RelationalStructure,
    StructureClass,
    antichain,
    arcs,
    chain,
    check,
    comparability_graph,
    complete_digraph,
    complete_graph,
    graph,
    hypergraph,
    hypergraph_structure,
    inflate,
    kary,
    perm_to_structure,
    poset,
    restrict,
    structure_to_perm,
    transitive_tournament,
    underlying_graph,
    validate,
)
from strategies import BINARY, any_binary, perms


# ------------------------------------------------------------------ validation

def test_oriented_graph_rejects_two_cycle():
    s = RelationalStructure.build(2, {ARC_REL: [(0, 1), (1, 0)]})
    violations = validate(s, ORIENTED)
    assert violations
    assert violations[0].axiom == "asymmetry"
    assert violations[0].witness == (0, 1)
    with pytest.raises(AxiomViolation):
        check(s, ORIENTED)


def test_transitive_triangle_is_a_tournament():
    assert validate(arcs(3, [(0, 1), (1, 2), (0, 2)]), TOURNAMENT) == []


def test_missing_pair_breaks_trichotomy():
    v = validate(arcs(3, [(0, 1), (1, 2)]), TOURNAMENT)
    assert [x.axiom for x in v] == ["trichotomy"]
    assert v[0].witness == (0, 2)


def test_poset_needs_transitivity():
    s = RelationalStructure.build(3, {ORDER_REL: [(0, 1), (1, 2)]})
    assert [x.axiom for x in validate(s, POSET)] == ["transitivity"]


def test_digraph_accepts_anything():
    assert validate(complete_digraph(4), DIGRAPH) == []


def test_signature_mismatch_is_malformed():
    with pytest.raises(MalformedStructure):
        validate(complete_graph(3), TOURNAMENT)


def test_out_of_range_tuple():
    with pytest.raises(MalformedStructure):
        RelationalStructure.build(2, {ARC_REL: [(0, 2)]})


def test_hypergraph_needs_symmetry():
    s = RelationalStructure.build(3, {"R": [(0, 1, 2)]})
    assert [x.axiom for x in validate(s, hypergraph(3))] == ["entry symmetry"]
    assert validate(hypergraph_structure(3, 3, [(0, 1, 2)]), hypergraph(3)) == []


@pytest.mark.parametrize("text,expected", [
    ("graph", StructureClass("graph")),
    ("kary(3)", kary(3)),
    ("hypergraph(4)", hypergraph(4)),
])
def test_class_parse(text, expected):
    assert StructureClass.parse(text) == expected
    assert str(expected) == text


@pytest.mark.parametrize("text", ["widget", "kary", "kary(0)", "graph(2)"])
def test_class_parse_rejects(text):
    with pytest.raises(MalformedStructure):
        StructureClass.parse(text)


# ------------------------------------------------------------------ restriction and inflation

def test_restrict_24513_to_middle_pair_is_12():
    s = perm_to_structure("24513")
    assert structure_to_perm(restrict(s, {1, 2})) == Permutation((1, 2))


def test_restrict_full_is_identity():
    s = perm_to_structure("2413")
    assert restrict(s, range(4)) == s


def test_restrict_chain_stays_chain():
    sub = restrict(transitive_tournament(7), {0, 2, 4})
    assert sub == transitive_tournament(3)
    assert sub.provenance == (0, 2, 4)


def test_inflate_2413_gives_24513():
    q = perm_to_structure("2413")
    blocks = [perm_to_structure("1"), perm_to_structure("12"), perm_to_structure("1"), perm_to_structure("1")]
    assert structure_to_perm(inflate(q, blocks)) == Permutation.parse("24513")


def test_inflate_by_singletons_is_identity():
    q = arcs(3, [(0, 1), (1, 2), (2, 0)])
    one = arcs(1, [])
    assert inflate(q, [one] * 3) == q


def test_inflate_chain_by_antichain():
    s = inflate(chain(2), [antichain(2), chain(1)])
    assert s.relation(ORDER_REL) == {(0, 2), (1, 2)}


def test_inflate_needs_one_block_per_element():
    with pytest.raises(MalformedStructure):
        inflate(chain(2), [chain(1)])


# ------------------------------------------------------------------ permutations and derived graphs

def test_identity_orders_agree():
    s = perm_to_structure("1234")
    assert s.relation(ORDER_REL) == s.relation(VALUE_REL)


def test_21_reverses_value_order():
    s = perm_to_structure("21")
    assert s.relation(VALUE_REL) == {(1, 0)}


def test_2413_value_ranks():
    s = perm_to_structure("2413")
    # position 2 holds the smallest value, then 0, 3, 1
    prec = s.relation(VALUE_REL)
    ranks = [sum((j, i) in prec for j in range(4)) + 1 for i in range(4)]
    assert ranks == [2, 4, 1, 3]
    assert validate(s, PERMUTATION) == []


def test_comparability_graphs():
    assert comparability_graph(chain(3)) == complete_graph(3)
    assert comparability_graph(antichain(4)) == graph(4, [])
    assert comparability_graph(poset(3, [(0, 2), (1, 2)])) == graph(3, [(0, 2), (1, 2)])


def test_underlying_graphs():
    assert underlying_graph(complete_digraph(4)) == complete_graph(4)
    assert underlying_graph(transitive_tournament(5)) == complete_graph(5)
    assert underlying_graph(arcs(3, [(0, 1)])) == graph(3, [(0, 1)])


# ------------------------------------------------------------------ properties

@st.composite
def inflations(draw):
    cls, q = draw(any_binary(1, 4))
    strategy = BINARY[cls.tag][1]
    blocks = [draw(strategy(1, 3)) for _ in range(q.n)]
    return cls, q, blocks


@settings(max_examples=150, deadline=None)
@given(inflations())
def test_inflation_restricts_back_to_blocks(case):
    cls, q, blocks = case
    s = inflate(q, blocks)
    start = 0
    for b in blocks:
        assert restrict(s, range(start, start + b.n)) == b
        start += b.n


@settings(max_examples=150, deadline=None)
@given(inflations())
def test_classes_closed_under_inflation(case):
    cls, q, blocks = case
    assert validate(inflate(q, blocks), cls) == []


@settings(max_examples=100, deadline=None)
@given(perms(1, 7), perms(1, 7))
def test_perm_structure_injective(p, r):
    if len(p) == len(r) and p != r:
        assert perm_to_structure(p) != perm_to_structure(r)
    assert structure_to_perm(perm_to_structure(p)).oneline == p
