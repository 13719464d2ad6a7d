"""Brute-force ground truth: subset-scan simplicity, enumeration and extension search.

Nothing here uses the closure machinery of :mod:`simplext.intervals`; the point is
to have a second, slow and obviously correct implementation to test against.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

from .extensions.base import ExtensionResult
from .structure import (
    RelationalStructure,
    StructureClass,
    perm_to_structure,
    structure_to_perm,
    validate,
)

ORACLE_LIMIT = 12
# candidates examined when no explicit cap is given
HARD_LIMIT = 1 << 24


class SearchSpaceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class SearchBudget:
    max_added: int
    max_candidates: int | None = None
    min_added: int = 0

    def __post_init__(self):
        if self.max_added < 0 or self.min_added < 0:
            raise ValueError("budget sizes must be nonnegative")


# --------------------------------------------------------------------------- simplicity

def _binary_is_interval(s: RelationalStructure, mask: int) -> bool:
    """Every member has the same out- and in-neighbours outside ``mask``."""
    outside = ~mask
    members = [e for e in range(s.n) if mask >> e & 1]
    first = members[0]
    for outs, ins in s.masks:
        want = (outs[first] & outside, ins[first] & outside)
        for x in members[1:]:
            if (outs[x] & outside, ins[x] & outside) != want:
                return False
    return True


def _generic_is_interval(s: RelationalStructure, inside: list[int]) -> bool:
    members = set(inside)
    ground = range(s.n)
    for sig, rel in zip(s.signature, s.relations):
        k = sig.arity
        for rest in itertools.product(ground, repeat=k - 1):
            if all(e in members for e in rest):
                continue
            for i in range(k):
                answers = {rest[:i] + (x,) + rest[i:] in rel for x in inside}
                if len(answers) > 1:
                    return False
    return True


def raw_is_interval(s: RelationalStructure, subset) -> bool:
    """Interval test straight from the definition."""
    inside = sorted(set(subset))
    if len(inside) <= 1:
        return True
    if s.is_binary:
        return _binary_is_interval(s, sum(1 << e for e in inside))
    return _generic_is_interval(s, inside)


def exhaustive_is_simple(s: RelationalStructure, limit: int = ORACLE_LIMIT) -> bool:
    """Scan all subsets of size 2..n-1 for an interval."""
    n = s.n
    if n > limit:
        raise SearchSpaceTooLarge(f"{n} elements exceeds the oracle limit {limit}")
    for size in range(2, n):
        for subset in itertools.combinations(range(n), size):
            if s.is_binary:
                if _binary_is_interval(s, sum(1 << e for e in subset)):
                    return False
            elif _generic_is_interval(s, list(subset)):
                return False
    return True


# --------------------------------------------------------------------------- pair states
#
# A pair (u, w) with u < w is described by a small integer.  Lexicographic order of
# these codes fixes the search order.

_STATES = {
    "graph": 2,           # 0 none, 1 edge
    "tournament": 2,      # 0 u -> w, 1 w -> u
    "oriented-graph": 3,  # 0 none, 1 u -> w, 2 w -> u
    "digraph": 4,         # 0 none, 1 u -> w, 2 w -> u, 3 both
    "poset": 3,           # 0 incomparable, 1 u < w, 2 w < u
    "linear-order": 3,
}


def _pair_tuples(tag: str, u: int, w: int, state: int) -> list[tuple[int, int]]:
    if tag == "graph":
        return [(u, w), (w, u)] if state else []
    if tag == "tournament":
        return [(u, w)] if state == 0 else [(w, u)]
    out = []
    if state in (1, 3):
        out.append((u, w))
    if state in (2, 3):
        out.append((w, u))
    return out


def _build_binary(s: RelationalStructure, c: StructureClass, rows, inter) -> RelationalStructure:
    n, m = s.n, len(rows)
    tag = c.tag
    pairs = set(s.relations[0])
    for j, row in enumerate(rows):
        for u, state in enumerate(row):
            pairs.update(_pair_tuples(tag, u, n + j, state))
    for (a, b), state in zip(itertools.combinations(range(m), 2), inter):
        pairs.update(_pair_tuples(tag, n + a, n + b, state))
    return RelationalStructure(n + m, s.signature, (frozenset(pairs),))


def _valid_rows(s: RelationalStructure, c: StructureClass) -> list[tuple[int, ...]]:
    states = range(_STATES[c.tag])
    rows = list(itertools.product(states, repeat=s.n))
    if c.tag in ("poset", "linear-order"):
        rows = [r for r in rows if not validate(_build_binary(s, c, [r], ()), c)]
    return rows


def _count_binary(rows: int, states: int, m: int) -> int:
    return math.comb(rows + m - 1, m) * states ** math.comb(m, 2)


def _twin_pairs(s: RelationalStructure) -> list[tuple[int, int]]:
    return [(u, v) for u, v in itertools.combinations(range(s.n), 2) if raw_is_interval(s, (u, v))]


def _binary_extensions(s, c, m, cap, prune=False) -> Iterator[ExtensionResult]:
    rows = _valid_rows(s, c)
    # an old pair that is an interval stays one unless some new element tells it apart
    twins = _twin_pairs(s) if prune else []
    states = _STATES[c.tag]
    total = _count_binary(len(rows), states, m)
    if total > cap:
        raise SearchSpaceTooLarge(f"{total} candidates exceed the cap {cap}")
    needs_check = c.tag in ("poset", "linear-order")
    original = tuple(range(s.n))
    added = tuple(range(s.n, s.n + m))
    # rows of the new elements are taken in non-decreasing order: any other assignment
    # is a relabelling of the new elements
    for combo in itertools.combinations_with_replacement(range(len(rows)), m):
        chosen = [rows[i] for i in combo]
        if any(all(r[u] == r[v] for r in chosen) for u, v in twins):
            continue
        for inter in itertools.product(range(states), repeat=math.comb(m, 2)):
            ext = _build_binary(s, c, chosen, inter)
            if needs_check and validate(ext, c):
                continue
            yield ExtensionResult(ext, original, added, {"rows": tuple(chosen), "inter": inter})


def _perm_extensions(s, m, cap) -> Iterator[ExtensionResult]:
    perm = structure_to_perm(s)
    n = len(perm)
    size = n + m
    total = math.comb(size, n) ** 2 * math.factorial(m)
    if total > cap:
        raise SearchSpaceTooLarge(f"{total} candidates exceed the cap {cap}")
    for positions in itertools.combinations(range(size), n):
        free_positions = [p for p in range(size) if p not in set(positions)]
        for values in itertools.combinations(range(1, size + 1), n):
            free_values = [v for v in range(1, size + 1) if v not in set(values)]
            for arrangement in itertools.permutations(free_values):
                line = [0] * size
                for p, v in zip(positions, perm.oneline):
                    line[p] = values[v - 1]
                for p, v in zip(free_positions, arrangement):
                    line[p] = v
                yield ExtensionResult(perm_to_structure(line), positions, tuple(free_positions),
                                      {"oneline": "".join(map(str, line)) if size < 10
                                       else " ".join(map(str, line))})


def _touching_tuples(c: StructureClass, n: int, m: int) -> list[tuple[tuple[int, ...], ...]]:
    """Groups of tuples that must be added together, each touching a new element."""
    k = c.k
    size = n + m
    if c.tag == "hypergraph":
        return [tuple(itertools.permutations(e)) for e in itertools.combinations(range(size), k)
                if e[-1] >= n]
    tuples = itertools.product(range(size), repeat=k)
    if c.tag == "kary-irreflexive":
        tuples = (t for t in tuples if len(set(t)) == k)
    return [(t,) for t in tuples if max(t) >= n]


def _kary_extensions(s, c, m, cap) -> Iterator[ExtensionResult]:
    groups = _touching_tuples(c, s.n, m)
    total = 1 << len(groups)
    if total > cap:
        raise SearchSpaceTooLarge(f"{total} candidates exceed the cap {cap}")
    base = set(s.relations[0])
    original = tuple(range(s.n))
    added = tuple(range(s.n, s.n + m))
    for bits in range(total):
        rel = set(base)
        for i, g in enumerate(groups):
            if bits >> i & 1:
                rel.update(g)
        ext = RelationalStructure(s.n + m, s.signature, (frozenset(rel),))
        yield ExtensionResult(ext, original, added, {"bits": bits})


def enumerate_extensions(s: RelationalStructure, c: StructureClass, m: int,
                         max_candidates: int | None = None,
                         prune: bool = False) -> Iterator[ExtensionResult]:
    """All class-valid extensions of ``s`` by ``m`` new elements, up to relabelling them.

    New elements get the highest ids, except for permutations, where the original points
    keep their relative order among all positions.  With ``prune`` set, binary classes
    skip candidates in which two old elements forming an interval of ``s`` still do.
    """
    cap = HARD_LIMIT if max_candidates is None else max_candidates
    if m == 0:
        yield ExtensionResult(s, tuple(range(s.n)), ())
        return
    if c.tag == "permutation":
        yield from _perm_extensions(s, m, cap)
    elif c.tag in _STATES:
        yield from _binary_extensions(s, c, m, cap, prune)
    elif c.tag in ("kary", "kary-irreflexive", "hypergraph"):
        if len(s.signature) != 1:
            raise ValueError("search supports a single relation")
        yield from _kary_extensions(s, c, m, cap)
    else:
        raise ValueError(f"unsupported class {c}")


def minimal_extension_size(s: RelationalStructure, c: StructureClass,
                           budget: SearchBudget) -> int | None:
    """Fewest added elements, within the budget, giving a simple extension (None if none)."""
    for m in range(budget.min_added, budget.max_added + 1):
        for ext in enumerate_extensions(s, c, m, budget.max_candidates, prune=True):
            if _simple(ext.extended):
                return m
    return None


def find_one_point_extension(s: RelationalStructure, c: StructureClass,
                             max_candidates: int | None = None) -> ExtensionResult | None:
    """First simple one-element extension in search order, if there is one."""
    for ext in enumerate_extensions(s, c, 1, max_candidates, prune=True):
        if _simple(ext.extended):
            return ext
    return None


def _simple(s: RelationalStructure) -> bool:
    return exhaustive_is_simple(s, limit=max(ORACLE_LIMIT, s.n))


# --------------------------------------------------------------------------- enumeration

def _all_posets(n: int) -> Iterator[frozenset]:
    def grow(k, rel):
        if k == n:
            yield rel
            return
        for down in range(1 << k):
            below = [i for i in range(k) if down >> i & 1]
            if any((j, i) in rel and not down >> j & 1 for i in below for j in range(k)):
                continue
            for up in range(1 << k):
                if up & down:
                    continue
                above = [i for i in range(k) if up >> i & 1]
                if any((i, j) in rel and not up >> j & 1 for i in above for j in range(k)):
                    continue
                if any((d, u) not in rel for d in below for u in above):
                    continue
                yield from grow(k + 1, rel | {(d, k) for d in below} | {(k, u) for u in above})

    yield from grow(0, frozenset())


def enumerate_structures(c: StructureClass, n: int,
                         limit: int = HARD_LIMIT) -> Iterator[RelationalStructure]:
    """Every labelled structure of class ``c`` on ``n`` elements, once each."""
    if n < 1:
        raise ValueError("n must be positive")
    tag = c.tag
    sig = c.signature
    if tag == "permutation":
        if math.factorial(n) > limit:
            raise SearchSpaceTooLarge(f"{n}! structures exceed the limit")
        for p in itertools.permutations(range(1, n + 1)):
            yield perm_to_structure(p)
        return
    if tag == "linear-order":
        if math.factorial(n) > limit:
            raise SearchSpaceTooLarge(f"{n}! structures exceed the limit")
        for p in itertools.permutations(range(n)):
            pairs = frozenset((p[i], p[j]) for i in range(n) for j in range(i + 1, n))
            yield RelationalStructure(n, sig, (pairs,))
        return
    if tag == "poset":
        if n > 7:
            raise SearchSpaceTooLarge("poset enumeration is limited to 7 elements")
        for rel in _all_posets(n):
            yield RelationalStructure(n, sig, (rel,))
        return
    if tag in _STATES:
        pairs = list(itertools.combinations(range(n), 2))
        states = _STATES[tag]
        if states ** len(pairs) > limit:
            raise SearchSpaceTooLarge(f"{states ** len(pairs)} structures exceed the limit")
        for code in itertools.product(range(states), repeat=len(pairs)):
            rel = set()
            for (u, w), state in zip(pairs, code):
                rel.update(_pair_tuples(tag, u, w, state))
            yield RelationalStructure(n, sig, (frozenset(rel),))
        return
    if tag in ("kary", "kary-irreflexive", "hypergraph"):
        groups = _touching_tuples(c, 0, n)
        if (1 << len(groups)) > limit:
            raise SearchSpaceTooLarge(f"2^{len(groups)} structures exceed the limit")
        for bits in range(1 << len(groups)):
            rel = set()
            for i, g in enumerate(groups):
                if bits >> i & 1:
                    rel.update(g)
            yield RelationalStructure(n, sig, (frozenset(rel),))
        return
    raise ValueError(f"unsupported class {c}")


__all__ = [
    "HARD_LIMIT",
    "ORACLE_LIMIT",
    "SearchBudget",
    "SearchSpaceTooLarge",
    "enumerate_extensions",
    "enumerate_structures",
    "exhaustive_is_simple",
    "find_one_point_extension",
    "minimal_extension_size",
    "raw_is_interval",
]
