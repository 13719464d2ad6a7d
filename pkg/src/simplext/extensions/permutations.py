"""Simple extensions of permutations with entry, exit and linking points.

Each construction is a pair of extensions, ``up`` and ``down``.  Both gain a new
leftmost point (the entry point, never a new maximum or minimum) and a new exit point,
which is a new maximum for ``up`` and a new minimum for ``down``.  Blocks of the
substitution decomposition are extended recursively and glued together by letting
one block's exit point double as the next block's entry point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..decomposition import degenerate_split
from ..intervals import _members, is_simple, maximal_proper_intervals_masks
from ..structure import Permutation, perm_to_structure
from .base import ExtensionResult, proper_intervals_avoid, proper_intervals_contain

UP, DOWN = "up", "down"


@dataclass(frozen=True)
class PermExt:
    """An extension in one-line form (values 0..K-1) with the roles of its points."""

    oneline: tuple[int, ...]
    original: tuple[int, ...]  # positions holding the original permutation, left to right
    entry: int
    exit: int
    linking: tuple[int, ...]

    @property
    def core(self) -> tuple[int, ...]:
        return tuple(p for p in range(len(self.oneline)) if p not in (self.entry, self.exit))


def _flip(a: str) -> str:
    return DOWN if a == UP else UP


def _complement(e: PermExt) -> PermExt:
    k = len(e.oneline)
    return PermExt(tuple(k - 1 - v for v in e.oneline), e.original, e.entry, e.exit, e.linking)


def _standardize(points):
    """points: list of (x, y, role); returns a PermExt."""
    by_x = sorted(range(len(points)), key=lambda i: points[i][0])
    rank_y = {i: r for r, i in enumerate(sorted(range(len(points)), key=lambda i: points[i][1]))}
    oneline = tuple(rank_y[i] for i in by_x)
    roles = [points[i][2] for i in by_x]
    original = tuple(p for p, r in enumerate(roles) if r == "orig")
    entry = roles.index("entry")
    exit_ = roles.index("exit")
    linking = tuple(p for p, r in enumerate(roles) if r in ("entry", "link", "exit"))
    return PermExt(oneline, original, entry, exit_, linking)


def _standard(values) -> tuple[int, ...]:
    order = sorted(range(len(values)), key=lambda i: values[i])
    out = [0] * len(values)
    for r, i in enumerate(order):
        out[i] = r
    return tuple(out)


def _link(sigma: tuple[int, ...], blocks: list[tuple[int, ...]], a: str) -> PermExt:
    """Inflate ``sigma`` by the block cores and add the linking points."""
    m = len(sigma)
    nontrivial = [i for i in range(m) if len(blocks[i]) > 1]
    t = len(nontrivial)
    variants = {}
    for r, i in enumerate(nontrivial):
        if r < t - 1:
            variants[i] = UP if sigma[i] < sigma[nontrivial[r + 1]] else DOWN
        else:
            variants[i] = a
    points = []
    entry_y, exit_x = {}, {}
    for i in range(m):
        if i not in variants:
            points.append((Fraction(2 * i + 1, 2), Fraction(2 * sigma[i] + 1, 2), "orig"))
            continue
        e = extension(blocks[i], variants[i])
        k = len(e.oneline)
        orig = set(e.original)
        for p, v in enumerate(e.oneline):
            x = i + Fraction(p + 1, k + 1)
            y = sigma[i] + Fraction(v + 1, k + 1)
            if p == e.entry:
                entry_y[i] = y
            elif p == e.exit:
                exit_x[i] = x
            else:
                points.append((x, y, "orig" if p in orig else "core"))
    points.append((Fraction(-1), entry_y[nontrivial[0]], "entry"))
    for r in range(t - 1):
        points.append((exit_x[nontrivial[r]], entry_y[nontrivial[r + 1]], "link"))
    top = Fraction(m + 1) if a == UP else Fraction(-1)
    last = nontrivial[-1]
    default = exit_x[last]
    candidates = [_standardize(points + [(default, top, "exit")])]
    if not any(last < x < default for x, _, _ in points):
        # the exit precedes every core point of its block, so it may also sit further
        # left, in any gap after the entry point
        xs = sorted({x for x, _, _ in points if x < default})
        for lo, hi in reversed(list(zip(xs, xs[1:] + [default]))[:-1]):
            candidates.append(_standardize(points + [((lo + hi) / 2, top, "exit")]))
    return _choose(candidates)


def _valid(e: PermExt) -> bool:
    """Every proper interval holds the exit point and misses the rightmost original point."""
    s = perm_to_structure(Permutation(tuple(v + 1 for v in e.oneline)))
    return proper_intervals_contain(s, e.exit) and proper_intervals_avoid(s, e.original[-1])


def _is_simple_ext(e: PermExt) -> bool:
    return is_simple(perm_to_structure(Permutation(tuple(v + 1 for v in e.oneline))))


def _choose(candidates: list[PermExt]) -> PermExt:
    """First simple candidate, else the first one meeting the interval contract."""
    for e in candidates:
        if _is_simple_ext(e):
            return e
    for e in candidates:
        if _valid(e):
            return e
    return candidates[0]


def _simple_case(pi: tuple[int, ...], a: str) -> PermExt:
    """Two new points for a simple permutation of length at least four."""
    n = len(pi)
    first = pi[0]
    top = max(range(n), key=lambda p: pi[p]) if a == UP else min(range(n), key=lambda p: pi[p])
    for gap in range(1, n):
        if gap in (first, first + 1):
            continue
        for pos in range(1, n):
            if pos in (top, top + 1):
                continue
            ey = Fraction(2 * gap - 1, 2)
            xx = Fraction(2 * pos - 1, 2)
            points = [(Fraction(p), Fraction(v), "orig") for p, v in enumerate(pi)]
            points.append((Fraction(-1), ey, "entry"))
            points.append((xx, Fraction(n) if a == UP else Fraction(-1), "exit"))
            e = _standardize(points)
            if is_simple(perm_to_structure(Permutation(tuple(v + 1 for v in e.oneline)))):
                return e
    raise RuntimeError(f"no two-point simple extension found for {pi}")


_BASE = {
    ((0, 1), UP): PermExt((1, 3, 0, 2), (2, 3), 0, 1, (0, 1)),
    ((0, 1), DOWN): PermExt((2, 0, 1, 3), (2, 3), 0, 1, (0, 1)),
    ((0, 1, 2), UP): PermExt((2, 0, 4, 1, 3), (1, 3, 4), 0, 2, (0, 2)),
    ((0, 1, 2), DOWN): PermExt((3, 1, 0, 2, 4), (1, 3, 4), 0, 2, (0, 2)),
}


def _parts_and_sigma(pi: tuple[int, ...]):
    s = perm_to_structure(Permutation(tuple(v + 1 for v in pi)))
    masks = maximal_proper_intervals_masks(s)
    split = degenerate_split(s, masks)
    if split is None:
        parts = [tuple(_members(m)) for m in masks]
    else:
        parts = list(split.parts)
    sigma = _standard([pi[p[0]] for p in parts])
    return parts, sigma, split is not None


def _singleton_then_block(block: tuple[int, ...], a: str) -> PermExt:
    """``12[1, block]`` where the extension points left of the block also pass the singleton."""
    e = extension(block, a)
    orig = set(e.original)
    first_x = min(e.original)
    low_y = min(e.oneline[p] for p in e.original)
    points = []
    for p, v in enumerate(e.oneline):
        role = "entry" if p == e.entry else "exit" if p == e.exit else "orig" if p in orig else "core"
        points.append((Fraction(p), Fraction(v), role))
    points.append((Fraction(2 * first_x - 1, 2), Fraction(2 * low_y - 1, 2), "orig"))
    return _standardize(points)


@lru_cache(maxsize=None)
def extension(pi: tuple[int, ...], a: str) -> PermExt:
    """Extension ``pi^a`` of a permutation given in 0-based one-line form (length >= 2)."""
    n = len(pi)
    if n < 2:
        raise ValueError("permutation extensions need length at least 2")
    if (pi, a) in _BASE:
        return _BASE[(pi, a)]
    if pi == tuple(range(n - 1, -1, -1)) and n <= 3:
        return _complement(extension(tuple(n - 1 - v for v in pi), _flip(a)))
    parts, sigma, degenerate = _parts_and_sigma(pi)
    if not degenerate and len(parts) > 2:
        if all(len(p) == 1 for p in parts):
            return _simple_case(pi, a)
        return _link(sigma, [_standard([pi[q] for q in p]) for p in parts], a)
    if sigma[0] > sigma[1]:
        comp = tuple(n - 1 - v for v in pi)
        return _complement(extension(comp, _flip(a)))
    # increasing sequence of parts
    k = len(parts)

    def piece(lo, hi):
        return _standard([pi[q] for p in parts[lo:hi] for q in p])

    for j in range(k - 1):
        if len(parts[j]) > 1:
            return _link((0, 1), [piece(0, j + 1), piece(j + 1, k)], a)
    if len(parts[-1]) > 1:
        if k - 1 >= 2:
            return _link((0, 1), [piece(0, k - 1), piece(k - 1, k)], a)
        return _singleton_then_block(piece(1, 2), a)
    # identity of length at least four
    return _link((0, 1), [tuple(range(n - 2)), (0, 1)], a)


@dataclass(frozen=True)
class PermExtensionPair:
    up: ExtensionResult
    down: ExtensionResult

    def variant(self, a: str) -> ExtensionResult:
        return self.up if a == UP else self.down

    @property
    def best(self) -> ExtensionResult:
        return self.up if self.up.is_simple else self.down


def _result(e: PermExt, a: str) -> ExtensionResult:
    perm = Permutation(tuple(v + 1 for v in e.oneline))
    s = perm_to_structure(perm)
    added = tuple(p for p in range(len(e.oneline)) if p not in set(e.original))
    meta = {
        "variant": a,
        "entry": e.entry,
        "exit": e.exit,
        "core": e.core,
        "linking_points": e.linking,
        "oneline": str(perm),
    }
    return ExtensionResult(s, e.original, added, meta)


def extend_permutation(p: Permutation | str | tuple) -> PermExtensionPair:
    if isinstance(p, str):
        p = Permutation.parse(p)
    elif not isinstance(p, Permutation):
        p = Permutation(tuple(p))
    if len(p) < 2:
        raise ValueError("permutation extensions need length at least 2")
    pi = tuple(v - 1 for v in p.oneline)
    return PermExtensionPair(_result(extension(pi, UP), UP), _result(extension(pi, DOWN), DOWN))
