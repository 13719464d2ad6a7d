"""Simple extensions of graphs by an independent set of new vertices.

The recursive routine returns the new vertices as neighbourhood bitmasks over the
original vertices.  For ``n >= 2`` there are between two and ``ceil(log2(n + 1))`` of
them, they are pairwise non-adjacent, and the extended graph is simple.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from itertools import combinations

from ..decomposition import degenerate_split
from ..intervals import _members, is_simple, maximal_proper_intervals_masks
from ..structure import GRAPH, GRAPH_REL, RelationalStructure, check, graph
from .base import ExtensionResult, bound, ceil_log

log = logging.getLogger(__name__)

fallback_count = 0

Adj = tuple[int, ...]


def _adj(g: RelationalStructure) -> Adj:
    return g.masks[0][0]


def _structure(adj: Adj, extra: list[int] | tuple[int, ...] = ()) -> RelationalStructure:
    n = len(adj)
    edges = [(u, v) for u in range(n) for v in _members(adj[u]) if u < v]
    edges += [(n + i, v) for i, m in enumerate(extra) for v in _members(m)]
    return graph(n + len(extra), edges)


def _sub(adj: Adj, part: tuple[int, ...]) -> Adj:
    index = {v: i for i, v in enumerate(part)}
    return tuple(sum(1 << index[w] for w in _members(adj[v]) if w in index) for v in part)


def _lift(mask: int, part: tuple[int, ...]) -> int:
    return sum(1 << v for i, v in enumerate(part) if mask >> i & 1)


def _simple(adj: Adj, extra) -> bool:
    return is_simple(_structure(adj, list(extra)))


def _part_ext(adj: Adj, part: tuple[int, ...]) -> list[int]:
    return [_lift(m, part) for m in independent_extension(_sub(adj, part))]


def _merge(sets: list[list[int]]) -> list[int]:
    """Identify every list with a prefix of the longest one (first longest wins)."""
    size = max(len(s) for s in sets)
    merged = [0] * size
    for s in sets:
        for i, m in enumerate(s):
            merged[i] |= m
    return merged


def _search(adj: Adj) -> list[int]:
    """Lexicographically least independent set of new vertices giving a simple graph."""
    global fallback_count
    fallback_count += 1
    n = len(adj)
    log.warning("graph construction fell back to exhaustive search (n=%d)", n)
    for m in range(2, ceil_log(2, n + 1) + 2):
        for extra in combinations(range(1, 1 << n), m):
            if _simple(adj, extra):
                return list(extra)
    raise RuntimeError("no simple extension found")


def _attach_singletons(adj: Adj, base: list[int], anchor: tuple[int, ...],
                       singles: list[int]) -> list[int] | None:
    """Join each singleton vertex to a new vertex that misses part of ``anchor``."""
    anchor_mask = _lift((1 << len(anchor)) - 1, anchor) if anchor else 0
    choices = [i for i, m in enumerate(base) if m & anchor_mask != anchor_mask]
    if not choices:
        return None
    # first admissible new vertex first, then the others
    options = [choices[0]] + [i for i in range(len(base)) if i != choices[0]]
    for i in options:
        extra = list(base)
        for c in singles:
            extra[i] |= 1 << c
        if _simple(adj, extra):
            return extra
    return None


@lru_cache(maxsize=None)
def independent_extension(adj: Adj) -> tuple[int, ...]:
    n = len(adj)
    if n == 1:
        return (1,)
    if n == 2:
        return (1, 2) if adj[0] else (1, 3)
    g = _structure(adj)
    masks = maximal_proper_intervals_masks(g)
    split = degenerate_split(g, masks)
    full = (1 << n) - 1
    if split is None and len(masks) > 2:
        parts = [tuple(_members(m)) for m in masks]
        if all(len(p) == 1 for p in parts):
            taken = set(adj) | {0, full}
            good = [m for m in range(1, full) if m not in taken
                    and all(m & ~(1 << v) != adj[v] for v in range(n))]
            for m1, m2 in combinations(good, 2):
                if _simple(adj, (m1, m2)):
                    return (m1, m2)
            return tuple(_search(adj))
        exts = {p: _part_ext(adj, p) for p in parts if len(p) > 1}
        anchor = max(exts, key=lambda p: len(exts[p]))
        base = _merge([exts[anchor]] + [exts[p] for p in exts if p != anchor])
        singles = [p[0] for p in parts if len(p) == 1]
        if not singles:
            if _simple(adj, base):
                return tuple(base)
            return tuple(_search(adj))
        out = _attach_singletons(adj, base, anchor, singles)
        return tuple(out) if out is not None else tuple(_search(adj))
    if split is None:
        parts = tuple(tuple(_members(m)) for m in masks)
        joined = bool(adj[parts[0][0]] >> parts[1][0] & 1)
    else:
        parts = split.parts
        joined = split.label == ((1, 1),)
    out = _degenerate(adj, parts, joined)
    return tuple(out) if out is not None else tuple(_search(adj))


def _degenerate(adj: Adj, parts, joined: bool) -> list[int] | None:
    n = len(adj)
    biggest = max(parts, key=lambda p: (len(p), -p[0]))
    j1 = tuple(biggest)
    j2 = tuple(sorted(v for p in parts if p is not biggest for v in p))
    if len(j1) >= 2:
        b1 = _part_ext(adj, j1)
        if len(j2) >= 2:
            b2 = _part_ext(adj, j2)
            base = _merge([b1, b2] if len(b1) >= len(b2) else [b2, b1])
            return base if _simple(adj, base) else None
        return _attach_singletons(adj, b1, j1, [j2[0]])
    # every part is a single vertex: empty or complete graph
    w = j1[0]
    base = _part_ext(adj, j2)
    codes = set()
    for v in j2:
        codes.add(sum(1 << i for i, m in enumerate(base) if m >> v & 1))
    every = (1 << len(base)) - 1
    if joined:
        candidates = [c for c in range(every) if c not in codes]
    else:
        candidates = [c for c in range(1, every + 1) if c not in codes]
    exceptional = ceil_log(2, n + 1) == ceil_log(2, n) + 1
    if not joined and exceptional:
        candidates = []
    for c in candidates:
        extra = [m | (1 << w if c >> i & 1 else 0) for i, m in enumerate(base)]
        if _simple(adj, extra):
            return extra
    # one more new vertex, adjacent to w only
    for c in ([0] if joined else []) + list(range(1, every + 1)):
        extra = [m | (1 << w if c >> i & 1 else 0) for i, m in enumerate(base)] + [1 << w]
        if _simple(adj, extra):
            return extra
    return None


def _result(g: RelationalStructure, extra) -> ExtensionResult:
    n = g.n
    s = _structure(_adj(g), list(extra))
    added = tuple(range(n, n + len(extra)))
    return ExtensionResult(s, tuple(range(n)), added, {"B": added})


def extend_graph(g: RelationalStructure) -> ExtensionResult:
    """Simple extension by an independent set of at most ceil(log2(n + 1)) vertices."""
    check(g, GRAPH)
    if g.n < 1:
        raise ValueError("graph must be nonempty")
    return _result(g, independent_extension(_adj(g)))


def extend_graph_inductive(g: RelationalStructure) -> ExtensionResult:
    return extend_graph(g)
