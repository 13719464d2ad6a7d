"""Hypothesis strategies for small structures of every class."""

from itertools import combinations, product

from hypothesis import strategies as st

from simplext.structure import (
    ARC_REL,
    DIGRAPH,
    GRAPH,
    ORIENTED,
    POSET,
    TOURNAMENT,
    RelationalStructure,
    arcs,
    graph,
    hypergraph_structure,
    kary_structure,
    perm_to_structure,
    poset,
)


@st.composite
def graphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return graph(n, [p for p, b in zip(pairs, bits) if b])


@st.composite
def tournaments(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return arcs(n, [(u, v) if b else (v, u) for (u, v), b in zip(pairs, bits)])


@st.composite
def digraphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    states = draw(st.lists(st.integers(0, 3), min_size=len(pairs), max_size=len(pairs)))
    out = []
    for (u, v), code in zip(pairs, states):
        if code & 1:
            out.append((u, v))
        if code & 2:
            out.append((v, u))
    return RelationalStructure.build(n, {ARC_REL: out}, {ARC_REL: 2})


@st.composite
def oriented_graphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    states = draw(st.lists(st.integers(0, 2), min_size=len(pairs), max_size=len(pairs)))
    out = [(u, v) if code == 1 else (v, u) for (u, v), code in zip(pairs, states) if code]
    return RelationalStructure.build(n, {ARC_REL: out}, {ARC_REL: 2})


@st.composite
def posets(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    order = draw(st.permutations(range(n)))
    pairs = [(order[i], order[j]) for i, j in combinations(range(n), 2)]
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return poset(n, [p for p, b in zip(pairs, bits) if b])


def perms(min_n=1, max_n=8):
    return st.integers(min_n, max_n).flatmap(lambda n: st.permutations(range(1, n + 1))).map(tuple)


def perm_structures(min_n=1, max_n=8):
    return perms(min_n, max_n).map(perm_to_structure)


@st.composite
def ternary(draw, min_n=1, max_n=5, irreflexive=False):
    n = draw(st.integers(min_n, max_n))
    cells = [t for t in product(range(n), repeat=3)
             if not irreflexive or len(set(t)) == 3]
    chosen = draw(st.lists(st.sampled_from(cells), max_size=min(len(cells), 20))) if cells else []
    return kary_structure(n, 3, chosen)


@st.composite
def hypergraphs3(draw, min_n=3, max_n=6):
    n = draw(st.integers(min_n, max_n))
    triples = list(combinations(range(n), 3))
    bits = draw(st.lists(st.booleans(), min_size=len(triples), max_size=len(triples)))
    return hypergraph_structure(n, 3, [t for t, b in zip(triples, bits) if b])


# (class, strategy) pairs for the binary classes closed under inflation
BINARY = {
    "graph": (GRAPH, graphs),
    "tournament": (TOURNAMENT, tournaments),
    "digraph": (DIGRAPH, digraphs),
    "oriented-graph": (ORIENTED, oriented_graphs),
    "poset": (POSET, posets),
}


def any_binary(min_n=1, max_n=7):
    return st.sampled_from(sorted(BINARY)).flatmap(
        lambda tag: st.tuples(st.just(BINARY[tag][0]), BINARY[tag][1](min_n, max_n)))

