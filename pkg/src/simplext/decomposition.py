"""Substitution (modular) decomposition and decomposition trees."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Union

import networkx as nx

from .intervals import _members, maximal_proper_intervals_masks
from .structure import (
    MalformedStructure,
    RelationalStructure,
    StructureClass,
    guess_class,
    inflate,
    restrict,
    structure_to_perm,
)


@dataclass(frozen=True)
class DegenerateSplit:
    """Finest split of a structure whose maximal proper intervals overlap.

    ``kind`` is ``"complete"`` when every pair of parts carries the same symmetric
    label, ``"linear"`` when the parts form a sequence with one asymmetric label between
    earlier and later parts, and ``"pair"`` for the two-part split used with relations
    of arity other than two.
    """

    kind: str
    parts: tuple[tuple[int, ...], ...]
    label: tuple


def _pair_label(s: RelationalStructure, u: int, v: int) -> tuple:
    out = []
    for outs, _ in s.masks:
        out.append((outs[u] >> v & 1, outs[v] >> u & 1))
    return tuple(out)


def _swap(label: tuple) -> tuple:
    return tuple((b, a) for a, b in label)


def degenerate_split(s: RelationalStructure, masks: list[int] | None = None) -> DegenerateSplit | None:
    """Split into the maximum number of parts, or None for a non-degenerate structure."""
    if masks is None:
        masks = maximal_proper_intervals_masks(s)
    full = (1 << s.n) - 1
    pair = None
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if a & b:
                pair = (a, b)
                break
        if pair:
            break
    if pair is None:
        return None
    first, second = pair
    if not s.is_binary:
        rest = full & ~first
        parts = sorted([tuple(_members(rest)), tuple(_members(first))])
        return DegenerateSplit("pair", tuple(parts), ())
    x = _members(full & ~first)[0]
    z = _members(first & ~second)[0]
    lam = _pair_label(s, x, z)
    n = s.n
    if lam == _swap(lam):
        g = nx.Graph()
        g.add_nodes_from(range(n))
        g.add_edges_from((u, v) for u in range(n) for v in range(u + 1, n)
                         if _pair_label(s, u, v) != lam)
        parts = sorted(tuple(sorted(c)) for c in nx.connected_components(g))
        return DegenerateSplit("complete", tuple(parts), lam)
    forward = max(lam, _swap(lam))
    backward = _swap(forward)
    d = nx.DiGraph()
    d.add_nodes_from(range(n))
    d.add_edges_from((u, v) for u in range(n) for v in range(n)
                     if u != v and _pair_label(s, u, v) != backward)
    cond = nx.condensation(d)
    order = list(nx.topological_sort(cond))
    parts = tuple(tuple(sorted(cond.nodes[c]["members"])) for c in order)
    return DegenerateSplit("linear", parts, forward)


# --------------------------------------------------------------------------- two-block decomposition

@dataclass(frozen=True)
class Decomposition:
    quotient: RelationalStructure
    blocks: tuple[RelationalStructure, ...]
    parts: tuple[tuple[int, ...], ...]
    degenerate: bool

    @cached_property
    def block_map(self) -> dict[int, int]:
        return {e: i for i, part in enumerate(self.parts) for e in part}

    def recompose(self) -> RelationalStructure:
        return inflate(self.quotient, self.blocks, placement=self.parts)


def _is_chain_of_singletons(parts) -> bool:
    return all(len(p) == 1 for p in parts)


def preferred_prefix(split: DegenerateSplit, cls: StructureClass | None) -> int:
    """Number of leading parts that form the first block of the two-block split."""
    parts = split.parts
    k = len(parts)
    tag = cls.tag if cls is not None else None
    if split.kind == "linear":
        if tag == "tournament":
            if _is_chain_of_singletons(parts):
                return 2 if k >= 4 else 1
            if len(parts[-1]) == 1:
                return k - 1
            return 1
        if tag in ("permutation", "poset", "linear-order"):
            # first block should not end with a lone top part; otherwise second block
            # should not start with a lone bottom part
            for j in range(k - 1):
                if len(parts[j]) > 1:
                    return j + 1
            if len(parts[-1]) > 1:
                return k - 1
            if tag == "permutation" and k > 3:
                return k - 2
            return 1
        return 1
    if split.kind == "complete":
        if tag == "graph":
            best = max(range(k), key=lambda i: (len(parts[i]), -parts[i][0]))
            return -(best + 1)  # negative: a single chosen part rather than a prefix
        if tag in ("poset", "linear-order"):
            for i, p in enumerate(parts):
                if len(p) > 1:
                    return -(i + 1)
            return -1
        return 1
    return 1


def _two_blocks(split: DegenerateSplit, cls: StructureClass | None) -> tuple[tuple[int, ...], tuple[int, ...]]:
    choice = preferred_prefix(split, cls)
    if choice < 0:
        chosen = split.parts[-choice - 1]
        rest = tuple(sorted(e for p in split.parts if p is not chosen for e in p))
        first, second = sorted([tuple(chosen), rest])
        return first, second
    first = tuple(sorted(e for p in split.parts[:choice] for e in p))
    second = tuple(sorted(e for p in split.parts[choice:] for e in p))
    return tuple(sorted([first, second]))


def _class_of(s: RelationalStructure, cls: StructureClass | None) -> StructureClass | None:
    if cls is not None:
        return cls
    try:
        return guess_class(s)
    except MalformedStructure:
        return None


def substitution_decompose(s: RelationalStructure, cls: StructureClass | None = None) -> Decomposition:
    """Write ``s`` as an inflation of a simple quotient.

    Quotient elements are the least members of the blocks, listed by that element.
    In the degenerate case the split into two blocks follows :func:`preferred_prefix`.
    """
    if s.n < 2:
        raise ValueError("decomposition needs at least two elements")
    masks = maximal_proper_intervals_masks(s)
    split = degenerate_split(s, masks)
    if split is None:
        parts = tuple(tuple(_members(m)) for m in masks)
        degenerate = len(parts) == 2
    else:
        parts = _two_blocks(split, _class_of(s, cls))
        degenerate = True
    parts = tuple(sorted(parts))
    quotient = restrict(s, [p[0] for p in parts])
    blocks = tuple(restrict(s, p) for p in parts)
    return Decomposition(quotient, blocks, parts, degenerate)


# --------------------------------------------------------------------------- trees

@dataclass(frozen=True)
class Leaf:
    element: int

    @property
    def elements(self) -> tuple[int, ...]:
        return (self.element,)

    def serialize(self) -> str:
        return str(self.element)

    def leaves(self) -> int:
        return 1


@dataclass(frozen=True)
class Node:
    label: str
    children: tuple["DecompositionTree", ...]
    elements: tuple[int, ...] = field(compare=False, default=())

    def serialize(self) -> str:
        return "(" + " ".join([self.label] + [c.serialize() for c in self.children]) + ")"

    def leaves(self) -> int:
        return sum(c.leaves() for c in self.children)


DecompositionTree = Union[Leaf, Node]


_LINEAR_LABELS = {
    "tournament": "ordered-pair-chain",
    "digraph": "ordered-pair-chain",
    "oriented-graph": "ordered-pair-chain",
    "poset": "chain",
    "linear-order": "chain",
}


def _degenerate_label(s: RelationalStructure, split_kind: str, label: tuple, parts,
                      cls: StructureClass | None) -> str:
    tag = cls.tag if cls is not None else None
    if split_kind == "complete":
        if tag in ("poset", "linear-order"):
            return "antichain"
        if tag == "digraph":
            return "complete" if all(a and b for a, b in label) else "union"
        if all(a == 0 and b == 0 for a, b in label):
            return "union"
        if all(a == 1 and b == 1 for a, b in label):
            return "join"
        return "complete"
    if split_kind == "linear":
        if tag == "permutation":
            a, b = parts[0][0], parts[1][0]
            rising = (a, b) in s.relation("prec")
            return "increasing" if rising else "decreasing"
        return _LINEAR_LABELS.get(tag, "linear")
    return "degenerate"


def _tree(s: RelationalStructure, ids: tuple[int, ...], cls: StructureClass | None) -> DecompositionTree:
    if s.n == 1:
        return Leaf(ids[0])
    masks = maximal_proper_intervals_masks(s)
    split = degenerate_split(s, masks)
    if split is None:
        parts = [tuple(_members(m)) for m in masks]
        if len(parts) == 2:
            q = restrict(s, [p[0] for p in parts])
            lab = _pair_label(q, 0, 1) if q.is_binary else ()
            if q.is_binary and lab == _swap(lab):
                label = _degenerate_label(q, "complete", lab, [(0,), (1,)], cls)
            elif q.is_binary:
                label = _degenerate_label(q, "linear", lab, [(0,), (1,)], cls)
            else:
                label = "degenerate"
        elif cls is not None and cls.tag == "permutation":
            label = str(structure_to_perm(restrict(s, [p[0] for p in parts])))
        else:
            label = "prime"
    else:
        parts = list(split.parts)
        label = _degenerate_label(s, split.kind, split.label, parts, cls)
    children = tuple(_tree(restrict(s, p), tuple(ids[e] for e in p), cls) for p in parts)
    return Node(label, children, tuple(ids))


def decomposition_tree(s: RelationalStructure, cls: StructureClass | None = None) -> DecompositionTree:
    """Recursive decomposition; degenerate nodes are split into as many parts as possible."""
    if s.n < 1:
        raise ValueError("empty structure has no decomposition tree")
    return _tree(s, tuple(range(s.n)), _class_of(s, cls))
