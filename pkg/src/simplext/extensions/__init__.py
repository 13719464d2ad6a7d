"""Simple extensions for each structure class, plus a dispatcher."""

from __future__ import annotations

from ..intervals import is_simple
from ..structure import (
    ORDER_REL,
    RelationalStructure,
    StructureClass,
    check,
    chain,
    perm_to_structure,
    structure_to_perm,
)
from .base import ConstructionError, ExtensionResult, bound, ceil_log
from .digraphs import extend_digraph, extend_oriented_graph
from .graphs import extend_graph
from .higher import extend_higher_arity, extend_irreflexive_kary
from .permutations import PermExtensionPair, extend_permutation
from .posets import PosetExtensionQuad, extend_antichain_via_graph, extend_poset
from .tournaments import (
    TournamentExtensionSet,
    extend_tournament,
    has_one_point_tournament_extension,
    is_odd_chain,
)

__all__ = [
    "ConstructionError",
    "ExtensionResult",
    "PermExtensionPair",
    "PosetExtensionQuad",
    "TournamentExtensionSet",
    "bound",
    "ceil_log",
    "extend",
    "extend_antichain_via_graph",
    "extend_digraph",
    "extend_graph",
    "extend_higher_arity",
    "extend_irreflexive_kary",
    "extend_oriented_graph",
    "extend_permutation",
    "extend_poset",
    "extend_tournament",
    "has_one_point_tournament_extension",
    "is_odd_chain",
]


def _fewest(candidates: list[ExtensionResult]) -> ExtensionResult:
    simple = [r for r in candidates if r.is_simple]
    if not simple:
        raise ConstructionError("no candidate extension is simple")
    return min(simple, key=lambda r: r.added_count)


def _tag(result: ExtensionResult, constructor: str) -> ExtensionResult:
    meta = dict(result.metadata)
    meta.setdefault("constructor", constructor)
    return ExtensionResult(result.extended, result.original_image, result.added, meta)


def _dispatch(s: RelationalStructure, c: StructureClass) -> ExtensionResult:
    tag = c.tag
    if tag == "tournament":
        ext = extend_tournament(s)
        return _tag(_fewest([r for r in (ext.t1, ext.t2, ext.t12) if r is not None]),
                    "tournament")
    if tag == "graph":
        return _tag(extend_graph(s), "graph")
    if tag == "permutation":
        if s.n == 1:
            return ExtensionResult(perm_to_structure("12"), (0,), (1,),
                                   {"constructor": "permutation", "oneline": "12"})
        pair = extend_permutation(structure_to_perm(s))
        return _tag(_fewest([pair.up, pair.down]), "permutation")
    if tag == "poset":
        quad = extend_poset(s)
        candidates = [quad[a] for a in quad.variants]
        if not s.relation(ORDER_REL):
            candidates.insert(0, _tag(extend_antichain_via_graph(s), "antichain-via-graph"))
        return _tag(_fewest(candidates), "poset")
    if tag == "linear-order":
        if s.n == 1:
            return ExtensionResult(chain(2), (0,), (1,), {"constructor": "linear-order"})
        raise ValueError("a linear order on three or more elements is never simple")
    if tag == "digraph":
        return _tag(extend_digraph(s), "digraph")
    if tag == "oriented-graph":
        return _tag(extend_oriented_graph(s), "oriented-graph")
    if tag == "kary":
        if c.k < 3:
            raise ValueError(f"{c} is binary or unary; use a binary class")
        return _tag(extend_higher_arity(s), "higher-arity")
    if tag in ("kary-irreflexive", "hypergraph"):
        return _tag(extend_irreflexive_kary(s), "irreflexive")
    raise ValueError(f"unsupported class {c}")


def extend(s: RelationalStructure, c: StructureClass) -> ExtensionResult:
    """Simple extension of ``s`` within the class bound.

    Structures with at least three elements that are already simple come back unchanged.
    Smaller ones are always extended, since every structure on at most two elements is
    trivially simple.
    """
    check(s, c)
    if s.n < 1:
        raise ValueError("structure must be nonempty")
    if s.n >= 3 and is_simple(s):
        return ExtensionResult(s, tuple(range(s.n)), (), {"constructor": "already-simple"})
    if c.tag == "linear-order" and s.n == 2:
        return ExtensionResult(s, (0, 1), (), {"constructor": "already-simple"})
    result = _dispatch(s, c)
    if not result.is_simple:
        raise ConstructionError(f"{c} construction returned a structure that is not simple")
    return result
