import pytest
from hypothesis import given, settings

from simplext.extensions import bound, extend
from simplext.intervals import is_simple
from simplext.io import (
    StructureFileError,
    format_report,
    parse_report,
    parse_structure,
    serialize_structure,
)
from simplext.structure import (
    GRAPH,
    ORDER_REL,
    PERMUTATION,
    POSET,
    TOURNAMENT,
    AxiomViolation,
    hypergraph,
    hypergraph_structure,
    kary,
    kary_structure,
    perm_to_structure,
    transitive_tournament,
)
from strategies import any_binary, hypergraphs3, perm_structures, ternary


def test_parse_two_chain():
    s, cls = parse_structure("class tournament n=2\narc 0 1")
    assert cls == TOURNAMENT
    assert s == transitive_tournament(2)


def test_parse_permutation():
    s, cls = parse_structure("class permutation n=4\nperm 2 4 1 3\n")
    assert cls == PERMUTATION
    assert s == perm_to_structure("2413")


def test_parse_rejects_two_cycle_in_oriented_graph():
    with pytest.raises(AxiomViolation) as info:
        parse_structure("class oriented-graph n=2\narc 0 1\narc 1 0")
    assert info.value.violations[0].axiom == "asymmetry"


def test_comments_and_blank_lines():
    text = "# leading comment\n\nclass graph n=3  # three vertices\nedge 0 1 # one edge\n\n"
    s, cls = parse_structure(text)
    assert cls == GRAPH
    assert s.relation("E") == {(0, 1), (1, 0)}


def test_poset_covers_are_closed():
    s, _ = parse_structure("class poset n=3\nrel 0 1\nrel 1 2")
    assert s.relation(ORDER_REL) == {(0, 1), (1, 2), (0, 2)}
    assert serialize_structure(s, POSET) == "class poset n=3\nrel 0 1\nrel 1 2\n"


def test_hypergraph_tuples_are_symmetrised():
    s, cls = parse_structure("class hypergraph(3) n=4\ntuple 2 0 1")
    assert cls == hypergraph(3)
    assert s == hypergraph_structure(4, 3, [(0, 1, 2)])
    assert serialize_structure(s, cls) == "class hypergraph(3) n=4\ntuple 0 1 2\n"


@pytest.mark.parametrize("text,line,column", [
    ("", 1, 1),
    ("graph n=3", 1, 1),
    ("class graph n=3\nedge 0 x", 2, 8),
    ("class graph n=3\nedge 0 3", 2, 8),
    ("class graph n=3\narc 0 1", 2, 1),
    ("class graph n=3\nedge 0 1 2", 2, 1),
    ("class permutation n=3\nperm 1 2", 2, 1),
    ("class permutation n=3\nperm 1 2 4", 2, 10),
    ("class widget n=3", 1, 7),
])
def test_diagnostics(text, line, column):
    with pytest.raises(StructureFileError) as info:
        parse_structure(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_report_round_trip():
    s = transitive_tournament(7)
    r = extend(s, TOURNAMENT)
    text = format_report(r, TOURNAMENT, r.is_simple, bound(TOURNAMENT, 7))
    report = parse_report(text)
    assert report.structure == r.extended
    assert report.fields["simple"] == "true"
    assert report.fields["added_count"] == "2"
    assert report.fields["bound"] == "2"
    assert report.fields["added"] == "7 8"
    assert report.fields["metadata"]["variant"] == "t12"
    # the simple line is reproducible from the structure block alone
    assert is_simple(report.structure) == (report.fields["simple"] == "true")


def test_report_tuple_metadata_is_comma_joined():
    r = extend(perm_to_structure("1234"), PERMUTATION)
    text = format_report(r, PERMUTATION, True, 3)
    assert "metadata linking_points=" in text
    line = next(ln for ln in text.splitlines() if ln.startswith("metadata core="))
    assert " " not in line.partition("=")[2]
    assert parse_report(text).fields["metadata"]["core"].count(",") == len(r.metadata["core"]) - 1


def _round_trip(s, cls):
    text = serialize_structure(s, cls)
    back, cls2 = parse_structure(text)
    assert cls2 == cls
    assert back == s
    assert serialize_structure(back, cls2) == text


@settings(max_examples=200, deadline=None)
@given(any_binary(1, 7))
def test_binary_round_trip(case):
    cls, s = case
    _round_trip(s, cls)


@settings(max_examples=80, deadline=None)
@given(perm_structures(1, 9))
def test_permutation_round_trip(s):
    _round_trip(s, PERMUTATION)


@settings(max_examples=60, deadline=None)
@given(ternary(1, 5))
def test_kary_round_trip(s):
    _round_trip(s, kary(3))


@settings(max_examples=60, deadline=None)
@given(hypergraphs3(3, 6))
def test_hypergraph_round_trip(h):
    _round_trip(h, hypergraph(3))


def test_serialization_is_sorted():
    s = kary_structure(3, 3, [(2, 1, 0), (0, 1, 2)])
    assert serialize_structure(s, kary(3)).splitlines()[1:] == ["tuple 0 1 2", "tuple 2 1 0"]
