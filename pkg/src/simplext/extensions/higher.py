"""One-element simple extensions for relations of arity three or more."""

from __future__ import annotations

from itertools import permutations

from ..structure import RelationalStructure
from .base import ExtensionResult


def scaffold_pairs(n: int) -> list[tuple[int, int]]:
    """Pairs of a simple binary structure on ``n`` elements.

    A path (both directions of each edge) for ``n >= 4``; otherwise a simple tournament:
    the single arc for two elements and the 3-cycle for three.
    """
    if n >= 4:
        return sorted([(i, i + 1) for i in range(n - 1)] + [(i + 1, i) for i in range(n - 1)])
    if n == 3:
        return [(0, 1), (1, 2), (2, 0)]
    if n == 2:
        return [(0, 1)]
    return []


def _high_relation(a: RelationalStructure) -> int:
    for i, sig in enumerate(a.signature):
        if sig.arity >= 3:
            return i
    raise ValueError("structure has no relation of arity three or more")


def _with_tuples(a: RelationalStructure, index: int, new) -> RelationalStructure:
    rels = [set(r) for r in a.relations]
    rels[index].update(new)
    return a.with_relations(a.n + 1, rels)


def extend_higher_arity(a: RelationalStructure) -> ExtensionResult:
    """Add ``x`` and the tuples ``(x, ..., x, u, v)`` for every pair of a simple scaffold.

    The first relation of arity at least three receives the new tuples; other relations
    are left alone.
    """
    index = _high_relation(a)
    k = a.signature[index].arity
    n = a.n
    if n < 1:
        raise ValueError("structure must be nonempty")
    x = n
    pairs = scaffold_pairs(n)
    new = [(x,) * (k - 2) + (u, v) for u, v in pairs]
    s = _with_tuples(a, index, new)
    meta = {"x": x, "relation": a.signature[index].name, "scaffold": tuple(pairs)}
    return ExtensionResult(s, tuple(range(n)), (x,), meta)


def extend_irreflexive_kary(a: RelationalStructure) -> ExtensionResult:
    """Add ``x`` to every tuple with ``x`` once and ``k - 1`` distinct old elements.

    Symmetric relations stay symmetric, so hypergraphs map to hypergraphs.
    """
    index = _high_relation(a)
    k = a.signature[index].arity
    n = a.n
    if n < k:
        raise ValueError(f"need at least {k} elements, got {n}")
    rel = a.relations[index]
    for t in sorted(rel):
        if len(set(t)) != len(t):
            raise ValueError(f"tuple {t} repeats an entry")
    x = n
    new = []
    for rest in permutations(range(n), k - 1):
        for i in range(k):
            new.append(rest[:i] + (x,) + rest[i:])
    s = _with_tuples(a, index, new)
    return ExtensionResult(s, tuple(range(n)), (x,), {"x": x, "relation": a.signature[index].name})
