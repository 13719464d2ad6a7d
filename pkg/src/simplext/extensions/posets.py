"""Simple extensions of posets in four variants.

Every variant carries two distinguished new elements ``ext1`` and ``ext2``:

========  ===========  ===========
variant   ext1         ext2
========  ===========  ===========
up        maximal      maximal
down      minimal      minimal
updown    maximal      minimal
downup    minimal      maximal
========  ===========  ===========

Every proper interval of a variant contains its ``ext2``, and at least one of the four
variants is simple.  Blocks of the substitution decomposition are extended recursively
and chained by linking elements that play ``ext2`` for one block and ``ext1`` for the
next.  Chains and antichains go through the permutation construction.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from ..decomposition import degenerate_split
from ..intervals import _members, is_simple, maximal_proper_intervals_masks
from ..structure import (
    ORDER_REL,
    POSET,
    RelationalStructure,
    check,
    poset,
    transitive_closure,
)
from .base import ExtensionResult, proper_intervals_avoid, proper_intervals_contain
from .graphs import independent_extension
from .permutations import DOWN, UP, extension as perm_extension

log = logging.getLogger(__name__)

UPDOWN, DOWNUP = "updown", "downup"
VARIANTS = (UP, DOWN, UPDOWN, DOWNUP)
# (kind of ext1, kind of ext2)
KINDS = {UP: ("max", "max"), DOWN: ("min", "min"), UPDOWN: ("max", "min"), DOWNUP: ("min", "max")}
BY_KINDS = {v: k for k, v in KINDS.items()}
DUAL = {UP: DOWN, DOWN: UP, UPDOWN: DOWNUP, DOWNUP: UPDOWN}

fallback_count = 0

Pairs = frozenset  # strict relations (u, v) meaning u < v, transitively closed


@dataclass(frozen=True)
class PosetExt:
    """Extension on ``size`` elements whose first ``n`` elements are the original ones."""

    size: int
    less: Pairs
    n: int
    ext1: int
    ext2: int
    selector: tuple = ()

    @property
    def core(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.size) if v not in (self.ext1, self.ext2))

    def structure(self) -> RelationalStructure:
        return RelationalStructure(self.size, POSET.signature, (self.less,))


def _dual_ext(e: PosetExt) -> PosetExt:
    return PosetExt(e.size, frozenset((v, u) for u, v in e.less), e.n, e.ext1, e.ext2, e.selector)


def _dual_rel(less: Pairs) -> Pairs:
    return frozenset((v, u) for u, v in less)


def _is_max(less: Pairs, v: int) -> bool:
    return not any(u == v for u, _ in less)


def _is_min(less: Pairs, v: int) -> bool:
    return not any(w == v for _, w in less)


def placement_ok(e: PosetExt, a: str) -> bool:
    k1, k2 = KINDS[a]
    test = {"max": _is_max, "min": _is_min}
    return test[k1](e.less, e.ext1) and test[k2](e.less, e.ext2)


def contract_ok(e: PosetExt, a: str) -> bool:
    """Placement of the distinguished elements and every proper interval holding ext2."""
    if not placement_ok(e, a):
        return False
    return proper_intervals_contain(e.structure(), e.ext2)


def _closed(size: int, pairs) -> Pairs | None:
    closed = transitive_closure(size, pairs)
    if any(u == v for u, v in closed):
        return None
    return closed


# --------------------------------------------------------------------------- base cases

def _base_two(less: Pairs, a: str) -> PosetExt:
    chain = bool(less)
    a_, b_ = next(iter(less)) if chain else (0, 1)
    x, y = 2, 3
    if chain:
        table = {
            UP: ([(a_, x), (b_, y)], x, y),
            DOWN: ([(x, a_), (y, b_)], y, x),
            UPDOWN: ([(a_, y), (x, y)], y, x),
            DOWNUP: ([(x, b_), (x, y)], x, y),
        }
        rel, e1, e2 = table[a]
        rel = rel + [(a_, b_)]
    else:
        table = {
            UP: ([(a_, x), (b_, x), (b_, y)], y, x),
            DOWN: ([(x, a_), (x, b_), (y, b_)], y, x),
            DOWNUP: ([(x, a_), (x, y)], x, y),
            UPDOWN: ([(x, y), (b_, y)], y, x),
        }
        rel, e1, e2 = table[a]
    return PosetExt(4, _closed(4, rel), 2, e1, e2, ("base",))


def _single(a: str) -> PosetExt:
    # one original element p and one new element x serving as both ext1 and ext2
    rel = {UP: [(0, 1)], DOWN: [(1, 0)]}.get(a, [])
    return PosetExt(2, frozenset(rel), 1, 1, 1, ("single",))


# --------------------------------------------------------------------------- helpers

def _sub(less: Pairs, part: tuple[int, ...]) -> Pairs:
    index = {v: i for i, v in enumerate(part)}
    return frozenset((index[u], index[v]) for u, v in less if u in index and v in index)


def _structure(n: int, less: Pairs) -> RelationalStructure:
    return RelationalStructure(n, POSET.signature, (frozenset(less),))


def _linked(n: int, less: Pairs, parts: list[tuple[int, ...]], a: str) -> PosetExt | None:
    """Extend the nontrivial parts and chain them with linking elements."""
    def below(i, j):
        return (parts[i][0], parts[j][0]) in less

    nontrivial = [i for i, p in enumerate(parts) if len(p) > 1]
    t = len(nontrivial)
    kinds = []
    for r, i in enumerate(nontrivial):
        if r == 0:
            k1 = KINDS[a][0]
        else:
            k1 = "min" if below(nontrivial[r - 1], i) else "max"
        if r == t - 1:
            k2 = KINDS[a][1]
        else:
            k2 = "min" if below(nontrivial[r + 1], i) else "max"
        kinds.append(BY_KINDS[(k1, k2)])
    owner = {}
    for i, p in enumerate(parts):
        for v in p:
            owner[v] = i
    size = n
    pairs = set()
    for u in range(n):
        for v in range(n):
            if owner[u] != owner[v] and below(owner[u], owner[v]):
                pairs.add((u, v))
    images = []
    for r, i in enumerate(nontrivial):
        part = parts[i]
        e = extension(len(part), _sub(less, part), kinds[r])
        image = {}
        for local in range(e.size):
            if local < e.n:
                image[local] = part[local]
            elif local not in (e.ext1, e.ext2):
                image[local] = size
                owner[size] = i
                size += 1
        images.append((e, image))
    # new core elements relate to other blocks the way their block does
    for v in range(n, size):
        for u in range(size):
            if owner[u] != owner[v]:
                if below(owner[u], owner[v]):
                    pairs.add((u, v))
                elif below(owner[v], owner[u]):
                    pairs.add((v, u))
    for e, image in images:
        for u, v in e.less:
            if u in image and v in image:
                pairs.add((image[u], image[v]))
    links = list(range(size, size + t + 1))
    size += t + 1

    def attach(link, e, image, which):
        for u, v in e.less:
            if u == which and v in image:
                pairs.add((link, image[v]))
            elif v == which and u in image:
                pairs.add((image[u], link))

    for r, (e, image) in enumerate(images):
        attach(links[r], e, image, e.ext1)
        attach(links[r + 1], e, image, e.ext2)
        # the block extension sits inside the result as its core plus two links
        if (e.ext1, e.ext2) in e.less:
            pairs.add((links[r], links[r + 1]))
        elif (e.ext2, e.ext1) in e.less:
            pairs.add((links[r + 1], links[r]))
    closed = _closed(size, pairs)
    if closed is None:
        return None
    return PosetExt(size, closed, n, links[0], links[-1], tuple(kinds))


def _good(e: PosetExt | None, a: str) -> bool:
    return e is not None and contract_ok(e, a)


def _simple_variant(n: int, less: Pairs, a: str) -> PosetExt | None:
    """Two new elements for a simple poset, as in the four small pictures."""
    maxima = [v for v in range(n) if _is_max(less, v)]
    minima = [v for v in range(n) if _is_min(less, v)]
    x, y = n, n + 1
    options = []
    if a == UP:
        for m1, m2 in combinations(maxima, 2):
            options += [([(m1, x), (m1, y), (m2, y)], x, y), ([(m2, x), (m1, y), (m2, y)], x, y)]
    elif a == DOWN:
        for m1, m2 in combinations(minima, 2):
            options += [([(x, m1), (y, m1), (y, m2)], x, y), ([(x, m2), (y, m1), (y, m2)], x, y)]
    elif a == UPDOWN:
        for p in range(n):
            options.append(([(p, x), (y, x)], x, y))
    else:
        for p in range(n):
            options.append(([(x, p), (x, y)], x, y))
    for extra, e1, e2 in options:
        closed = _closed(n + 2, list(less) + extra)
        e = PosetExt(n + 2, closed, n, e1, e2, ("simple",)) if closed is not None else None
        if e is not None and placement_ok(e, a) and is_simple(e.structure()):
            return e
    return None


def _from_permutation(order: tuple[int, ...], antichain: bool, a: str) -> PosetExt:
    """Chain or antichain through an extension of the increasing or decreasing permutation.

    ``order`` lists the original elements from bottom to top of the chain.
    """
    if a in (UP, UPDOWN):
        return _dual_ext(_from_permutation(order[::-1], antichain, DUAL[a]))
    n = len(order)
    pi = tuple(range(n - 1, -1, -1)) if antichain else tuple(range(n))
    pe = perm_extension(pi, UP if a == DOWNUP else DOWN)
    k = len(pe.oneline)
    originals = set(pe.original)
    index = {p: order[i] for i, p in enumerate(pe.original)}
    index.update({p: n + i for i, p in enumerate(q for q in range(k) if q not in originals)})
    pairs = [(index[p], index[q]) for p in range(k) for q in range(p + 1, k)
             if pe.oneline[p] < pe.oneline[q]]
    return PosetExt(k, frozenset(pairs), n, index[pe.entry], index[pe.exit], ("permutation",))


def _search(n: int, less: Pairs, a: str) -> PosetExt:
    """Exhaustive fallback over small extensions honouring the variant contract."""
    global fallback_count
    fallback_count += 1
    log.warning("poset construction fell back to exhaustive search (n=%d, %s)", n, a)
    from ..oracle import enumerate_extensions

    limit = (n + 2) // 2
    for m in range(1, limit + 1):
        for ext in enumerate_extensions(_structure(n, less), POSET, m):
            rel = ext.extended.relation(ORDER_REL)
            for e1 in range(n, n + m):
                for e2 in range(n, n + m):
                    if m > 1 and e1 == e2:
                        continue
                    e = PosetExt(n + m, rel, n, e1, e2, ("search",))
                    if contract_ok(e, a):
                        return e
    raise RuntimeError("no poset extension meets the contract")


# --------------------------------------------------------------------------- recursion

@lru_cache(maxsize=None)
def extension(n: int, less: Pairs, a: str) -> PosetExt:
    """Variant ``a`` of the extension of the poset ``({0..n-1}, less)``."""
    return _build(n, less, a)


def _build(n: int, less: Pairs, a: str) -> PosetExt:
    if n == 1:
        return _single(a)
    if n == 2:
        return _base_two(less, a)
    s = _structure(n, less)
    masks = maximal_proper_intervals_masks(s)
    split = degenerate_split(s, masks)
    candidates = []
    if split is None and len(masks) > 2:
        parts = [tuple(_members(m)) for m in masks]
        if all(len(p) == 1 for p in parts):
            e = _simple_variant(n, less, a)
            if e is not None:
                return e
            return _search(n, less, a)
        parts.sort(key=lambda p: (len(p) == 1, p[0]))
        candidates.append(lambda: _linked(n, less, parts, a))
    else:
        if split is None:
            parts = [tuple(_members(m)) for m in masks]
            a0, b0 = parts[0][0], parts[1][0]
            if (a0, b0) in less:
                kind, parts = "chain", parts
            elif (b0, a0) in less:
                kind, parts = "chain", parts[::-1]
            else:
                kind = "antichain"
        else:
            parts = list(split.parts)
            kind = "chain" if split.kind == "linear" else "antichain"
            if kind == "chain" and (parts[1][0], parts[0][0]) in less:
                parts = parts[::-1]
        if kind == "chain":
            candidates.extend(_chain_candidates(n, less, parts, a))
        else:
            candidates.extend(_antichain_candidates(n, less, parts, a))
    for make in candidates:
        e = make()
        if _good(e, a):
            return e
    return _search(n, less, a)


def _merge(parts) -> tuple[int, ...]:
    return tuple(sorted(v for p in parts for v in p))


def _chain_candidates(n, less, parts, a):
    k = len(parts)
    for j in range(k - 1):
        if len(parts[j]) > 1:
            first, second = _merge(parts[:j + 1]), _merge(parts[j + 1:])
            yield lambda f=first, s=second: _linked(n, less, [f, s], a)
            return
    if len(parts[-1]) > 1:
        yield lambda: _dual_ext(extension(n, _dual_rel(less), DUAL[a]))
        return
    yield lambda: _from_permutation(tuple(p[0] for p in parts), False, a)


def _antichain_candidates(n, less, parts, a):
    ordered = sorted(parts, key=lambda p: p[0])
    first = next((p for p in ordered if len(p) > 1), None)
    if first is None:
        yield lambda: _from_permutation(tuple(range(n)), True, a)
        return
    rest = _merge([p for p in ordered if p is not first])
    if len(rest) >= 2:
        yield lambda: _linked(n, less, [first, rest], a)
        return
    w = rest[0]

    def lone():
        base_variant = {UP: UP, DOWN: DOWN}.get(a, a)
        e = extension(len(first), _sub(less, first), base_variant)
        # re-index: originals of the block keep their ids, w is added, extras shift
        size = e.size + 1
        image = {}
        extra = n
        for local in range(e.size):
            if local < e.n:
                image[local] = first[local]
            else:
                image[local] = extra
                extra += 1
        pairs = [(image[u], image[v]) for u, v in e.less]
        if a == UP:
            pairs.append((w, image[e.ext2]))
        elif a == DOWN:
            pairs.append((image[e.ext2], w))
        closed = _closed(size, pairs)
        if closed is None:
            return None
        return PosetExt(size, closed, n, image[e.ext1], image[e.ext2], ("lone",))

    yield lone


# --------------------------------------------------------------------------- public API

@dataclass(frozen=True)
class PosetExtensionQuad:
    variants: dict

    def __getitem__(self, a: str) -> ExtensionResult:
        return self.variants[a]

    @property
    def best(self) -> ExtensionResult:
        for a in VARIANTS:
            if self.variants[a].is_simple:
                return self.variants[a]
        return self.variants[UP]


def _result(e: PosetExt, a: str) -> ExtensionResult:
    added = tuple(range(e.n, e.size))
    meta = {"variant": a, "ext1": e.ext1, "ext2": e.ext2, "selector": e.selector}
    return ExtensionResult(e.structure(), tuple(range(e.n)), added, meta)


def extend_poset(p: RelationalStructure) -> PosetExtensionQuad:
    check(p, POSET)
    if p.n < 1:
        raise ValueError("poset must be nonempty")
    less = p.relation(ORDER_REL)
    return PosetExtensionQuad({a: _result(extension(p.n, less, a), a) for a in VARIANTS})


def extend_antichain_via_graph(p: RelationalStructure) -> ExtensionResult:
    """Extend the empty comparability graph, then put every new vertex above its neighbours."""
    check(p, POSET)
    if p.relation(ORDER_REL):
        raise ValueError("input is not an antichain")
    n = p.n
    extra = independent_extension(tuple([0] * n))
    pairs = [(v, n + i) for i, m in enumerate(extra) for v in _members(m)]
    s = poset(n + len(extra), pairs)
    return ExtensionResult(s, tuple(range(n)), tuple(range(n, n + len(extra))), {"B": tuple(range(n, n + len(extra)))})
