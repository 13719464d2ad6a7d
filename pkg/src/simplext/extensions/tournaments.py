"""One- and two-vertex simple extensions of tournaments.

The main routine returns the out-neighbourhood (as a bitmask over the original
vertices) of one new vertex ``x``.  Every proper interval of ``T + x`` contains ``x``,
and ``T + x`` is simple unless ``T`` has three vertices or is a transitive tournament
of odd order at least five.  A second vertex ``y`` with the reversed arcs, joined by
``x -> y``, settles the remaining cases.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

from ..decomposition import degenerate_split
from ..intervals import _members, is_simple, maximal_proper_intervals_masks
from ..structure import ARC_REL, TOURNAMENT, RelationalStructure, arcs, check, restrict
from .base import ExtensionResult, proper_intervals_contain

log = logging.getLogger(__name__)

# number of times the exhaustive fallback was needed; acceptance expects zero
fallback_count = 0

Outs = tuple[int, ...]


def _outs(t: RelationalStructure) -> Outs:
    return t.masks[0][0]


def _structure(outs: Outs) -> RelationalStructure:
    n = len(outs)
    return arcs(n, [(u, v) for u in range(n) for v in _members(outs[u])])


def _with_vertex(outs: Outs, xm: int) -> RelationalStructure:
    n = len(outs)
    full = (1 << n) - 1
    ext = [o | ((~xm & full) >> u & 1) << n for u, o in enumerate(outs)]
    ext.append(xm)
    return _structure(tuple(ext))


def _is_transitive(outs: Outs) -> bool:
    return sorted(bin(o).count("1") for o in outs) == list(range(len(outs)))


def is_odd_chain(t: RelationalStructure) -> bool:
    """Transitive tournament of odd order at least five."""
    outs = _outs(t)
    return len(outs) >= 5 and len(outs) % 2 == 1 and _is_transitive(outs)


def _chain_order(outs: Outs) -> list[int]:
    """Vertices of a transitive tournament from source to sink."""
    return sorted(range(len(outs)), key=lambda v: -bin(outs[v]).count("1"))


def _sub(outs: Outs, part: tuple[int, ...]) -> Outs:
    index = {v: i for i, v in enumerate(part)}
    out = []
    for v in part:
        m = 0
        for w in _members(outs[v]):
            if w in index:
                m |= 1 << index[w]
        out.append(m)
    return tuple(out)


def _lift(mask: int, part: tuple[int, ...]) -> int:
    out = 0
    for i, v in enumerate(part):
        if mask >> i & 1:
            out |= 1 << v
    return out


def _part_t1(outs: Outs, part: tuple[int, ...]) -> int:
    return _lift(one_vertex_mask(_sub(outs, part)), part)


def _part_t2(outs: Outs, part: tuple[int, ...]) -> int:
    full = _lift((1 << len(part)) - 1, part)
    return full & ~_part_t1(outs, part)


def _acceptable(outs: Outs, xm: int, need_simple: bool) -> bool:
    s = _with_vertex(outs, xm)
    if need_simple:
        return is_simple(s)
    return proper_intervals_contain(s, len(outs))


def _no_twin(outs: Outs, xm: int) -> bool:
    return all(xm & ~(1 << v) != outs[v] for v in range(len(outs)))


def _exhaustive(outs: Outs, need_simple: bool) -> int:
    global fallback_count
    fallback_count += 1
    log.warning("tournament construction fell back to exhaustive search (n=%d)", len(outs))
    n = len(outs)
    for want_simple in ((True, False) if not need_simple else (True,)):
        for xm in range(1 << n):
            if _acceptable(outs, xm, want_simple):
                return xm
    raise RuntimeError("no one-vertex extension with the required intervals")


def _degenerate_candidates(outs: Outs, parts: tuple[tuple[int, ...], ...]):
    """Out-masks for x following the two-block cases, most preferred first."""
    k = len(parts)
    flat = [tuple(sorted(v for p in parts[:j] for v in p)) for j in range(k + 1)]
    tail = [tuple(sorted(v for p in parts[j:] for v in p)) for j in range(k + 1)]
    if len(parts[-1]) == 1 and len(flat[k - 1]) >= 2:
        # the lone last part beats x, x extends the rest
        yield _part_t1(outs, flat[k - 1])
    if len(parts[0]) == 1 and len(tail[1]) >= 2:
        yield _lift(1, parts[0]) | _part_t1(outs, tail[1])
    for j in range(1, k):
        a1, a2 = flat[j], tail[j]
        if len(a1) < 2 or len(a2) < 2:
            continue
        for f1 in (_part_t1, _part_t2):
            for f2 in (_part_t1, _part_t2):
                yield f1(outs, a1) | f2(outs, a2)


@lru_cache(maxsize=None)
def one_vertex_mask(outs: Outs) -> int:
    """Out-neighbourhood of the new vertex x in the extension T + x."""
    n = len(outs)
    if n == 1:
        return 1
    if n == 2:
        u = 0 if outs[0] else 1
        return 1 << u
    if n == 3:
        if _is_transitive(outs):
            p1, _, p3 = _chain_order(outs)
            return (1 << p1) | (1 << p3)
        # on the 3-cycle, x -> p1 -> p2 -> p3 -> p1 with p2, p3 -> x; reversing the
        # arc to p3 would leave {p1, y} as an interval once y is added
        return 1
    t = _structure(outs)
    masks = maximal_proper_intervals_masks(t)
    split = degenerate_split(t, masks)
    parts = split.parts if split is not None else tuple(tuple(_members(m)) for m in masks)
    if len(parts) == 2 and split is None:
        # two disjoint maximal intervals; they still form a chain of two parts
        a, b = parts
        parts = (a, b) if outs[a[0]] >> b[0] & 1 else (b, a)
    if len(parts) > 2 and split is None:
        if all(len(p) == 1 for p in parts):
            for xm in range(1, (1 << n) - 1):
                if _no_twin(outs, xm) and is_simple(_with_vertex(outs, xm)):
                    return xm
            return _exhaustive(outs, True)
        xm = 0
        star = next(p for p in parts if len(p) > 1)
        for p in parts:
            if len(p) > 1:
                xm |= _part_t1(outs, p)
            elif outs[p[0]] >> star[0] & 1:
                xm |= 1 << p[0]
        if _acceptable(outs, xm, True):
            return xm
        return _exhaustive(outs, True)
    # linear parts p_1 -> p_2 -> ... -> p_k
    if all(len(p) == 1 for p in parts):
        order = [p[0] for p in parts]
        a1, a2 = tuple(sorted(order[:2])), tuple(sorted(order[2:]))
        first = _lift(one_vertex_mask(_sub(outs, a1)), a1)
        rest = _part_t1(outs, a2)
        b = order[2]
        if not rest >> b & 1:
            rest = _part_t2(outs, a2)
        xm = first | rest
        if _acceptable(outs, xm, n % 2 == 0):
            return xm
        return _exhaustive(outs, n % 2 == 0)
    for xm in _degenerate_candidates(outs, parts):
        if _acceptable(outs, xm, True):
            return xm
    return _exhaustive(outs, True)


@dataclass(frozen=True)
class TournamentExtensionSet:
    t1: ExtensionResult
    t2: ExtensionResult
    t12: ExtensionResult | None

    @property
    def best(self) -> ExtensionResult:
        if self.t1.is_simple:
            return self.t1
        if self.t2.is_simple:
            return self.t2
        assert self.t12 is not None
        return self.t12


def _result(outs: Outs, xm: int, variant: str) -> ExtensionResult:
    n = len(outs)
    s = _with_vertex(outs, xm)
    name = "x" if variant == "t1" else "y"
    return ExtensionResult(s, tuple(range(n)), (n,), {"variant": variant, name: n})


def extend_tournament(t: RelationalStructure) -> TournamentExtensionSet:
    check(t, TOURNAMENT)
    if t.n < 1:
        raise ValueError("tournament must be nonempty")
    outs = _outs(t)
    n = len(outs)
    xm = one_vertex_mask(outs)
    ym = ((1 << n) - 1) & ~xm
    t1 = _result(outs, xm, "t1")
    t2 = _result(outs, ym, "t2")
    t12 = None
    if not (t1.is_simple or t2.is_simple):
        pairs = [(u, v) for u, v in t.relation(ARC_REL)]
        pairs += [(n, v) for v in _members(xm)] + [(v, n) for v in range(n) if not xm >> v & 1]
        pairs += [(n + 1, v) for v in _members(ym)] + [(v, n + 1) for v in range(n) if not ym >> v & 1]
        pairs.append((n, n + 1))
        t12 = ExtensionResult(arcs(n + 2, pairs), tuple(range(n)), (n, n + 1),
                              {"variant": "t12", "x": n, "y": n + 1})
    return TournamentExtensionSet(t1, t2, t12)


def has_one_point_tournament_extension(t: RelationalStructure) -> bool:
    check(t, TOURNAMENT)
    return not (t.n == 3 or is_odd_chain(t))
