"""Intervals (modules) of relational structures.

A set ``I`` is an interval when any two of its elements can be swapped inside every
relation tuple that has at least one other entry outside ``I``.  Binary signatures use
bitmask neighbourhoods; other arities fall back to scanning the tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .structure import RelationalStructure


@dataclass(frozen=True)
class IntervalReport:
    subset: frozenset
    is_interval: bool
    # (relation name, tuple in the relation, (x, y)) where replacing x by y leaves the relation
    witness: tuple | None = None

    def __bool__(self):
        return self.is_interval


def _to_mask(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def _members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _first_violation(s: RelationalStructure, inside: frozenset):
    """First tuple (in sorted order) that separates two elements of ``inside``."""
    ordered = sorted(inside)
    for sig, rel in zip(s.signature, s.relations):
        for t in sorted(rel):
            for i, e in enumerate(t):
                if e not in inside:
                    continue
                rest = t[:i] + t[i + 1:]
                if all(r in inside for r in rest):
                    continue
                for y in ordered:
                    if y != e and t[:i] + (y,) + t[i + 1:] not in rel:
                        return sig.name, t, (e, y)
    return None


def is_interval(s: RelationalStructure, subset: Iterable[int]) -> IntervalReport:
    inside = frozenset(subset)
    for e in inside:
        if not 0 <= e < s.n:
            raise ValueError(f"element {e} out of range 0..{s.n - 1}")
    if len(inside) <= 1:
        return IntervalReport(inside, True)
    witness = _first_violation(s, inside)
    return IntervalReport(inside, witness is None, witness)


def _binary_closure_mask(s: RelationalStructure, seed: int) -> int:
    masks = s.masks
    anchor = (seed & -seed).bit_length() - 1
    inside = seed
    todo = seed & ~(1 << anchor)
    while todo:
        diff = 0
        for y in _members(todo):
            for outs, ins in masks:
                diff |= (outs[anchor] ^ outs[y]) | (ins[anchor] ^ ins[y])
        todo = diff & ~inside
        inside |= todo
    return inside


def _generic_closure(s: RelationalStructure, seed: frozenset) -> frozenset:
    inside = set(seed)
    changed = True
    while changed:
        changed = False
        for rel in s.relations:
            for t in rel:
                for i, e in enumerate(t):
                    if e not in inside:
                        continue
                    rest = t[:i] + t[i + 1:]
                    outside = [r for r in rest if r not in inside]
                    if not outside:
                        continue
                    if any(t[:i] + (y,) + t[i + 1:] not in rel for y in inside if y != e):
                        # every element of the rest must join, or this tuple still separates
                        inside.update(outside)
                        changed = True
                        break
    return frozenset(inside)


def closure_mask(s: RelationalStructure, seed_mask: int) -> int:
    """Bitmask version of :func:`interval_closure`."""
    if seed_mask & (seed_mask - 1) == 0:
        return seed_mask
    if s.is_binary:
        return _binary_closure_mask(s, seed_mask)
    return _to_mask(_generic_closure(s, frozenset(_members(seed_mask))))


def interval_closure(s: RelationalStructure, seed: Iterable[int]) -> frozenset:
    """Smallest interval of ``s`` containing ``seed``."""
    seed = frozenset(seed)
    if not seed:
        raise ValueError("seed must be nonempty")
    for e in seed:
        if not 0 <= e < s.n:
            raise ValueError(f"element {e} out of range 0..{s.n - 1}")
    return frozenset(_members(closure_mask(s, _to_mask(seed))))


def pair_closures(s: RelationalStructure) -> list[list[int]]:
    """``C[x][w]`` is the closure mask of ``{x, w}`` (``C[x][x]`` is ``{x}``)."""
    n = s.n
    table = [[0] * n for _ in range(n)]
    for x in range(n):
        table[x][x] = 1 << x
        for w in range(x + 1, n):
            table[x][w] = table[w][x] = closure_mask(s, (1 << x) | (1 << w))
    return table


def is_simple(s: RelationalStructure) -> bool:
    """True when ``s`` has no interval other than the empty set, singletons and the whole set."""
    n = s.n
    if n <= 2:
        return True
    full = (1 << n) - 1
    for x in range(n):
        for w in range(x + 1, n):
            if closure_mask(s, (1 << x) | (1 << w)) != full:
                return False
    return True


def proper_interval_witness(s: RelationalStructure) -> frozenset | None:
    """Some proper interval of ``s``, or None when ``s`` is simple."""
    n = s.n
    full = (1 << n) - 1
    for x in range(n):
        for w in range(x + 1, n):
            c = closure_mask(s, (1 << x) | (1 << w))
            if c != full:
                return frozenset(_members(c))
    return None


def maximal_proper_intervals_masks(s: RelationalStructure) -> list[int]:
    n = s.n
    if n < 2:
        raise ValueError("need at least two elements")
    full = (1 << n) - 1
    table = pair_closures(s)
    candidates = set()
    for x in range(n):
        row = table[x]
        for z in range(n):
            if z == x:
                continue
            # largest interval containing x and avoiding z
            u = 0
            for w in range(n):
                if not row[w] >> z & 1:
                    u |= 1 << w
            candidates.add(u)
    candidates.discard(full)
    return sorted((c for c in candidates if not any(c != d and c & d == c for d in candidates)),
                  key=lambda m: (m & -m))


def maximal_proper_intervals(s: RelationalStructure) -> list[frozenset]:
    """Inclusion-maximal intervals different from the whole ground set, ordered by least element.

    Members may overlap; this happens exactly in the degenerate two-block case.
    """
    return [frozenset(_members(m)) for m in maximal_proper_intervals_masks(s)]


def all_intervals(s: RelationalStructure) -> list[frozenset]:
    """Every interval with at least two elements, by direct subset scan (small n only)."""
    out = []
    for m in range(1, 1 << s.n):
        if m & (m - 1) and is_interval(s, _members(m)).is_interval:
            out.append(frozenset(_members(m)))
    return out
