"""Shared result types, bounds and checks for the extension constructions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from ..intervals import closure_mask, is_simple
from ..structure import RelationalStructure, StructureClass, restrict


class ConstructionError(RuntimeError):
    """A construction produced something that fails its own contract."""


@dataclass(frozen=True)
class ExtensionResult:
    extended: RelationalStructure
    original_image: tuple[int, ...]
    added: tuple[int, ...]
    metadata: dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def added_count(self) -> int:
        return len(self.added)

    @property
    def is_simple(self) -> bool:
        return is_simple(self.extended)

    def restore(self) -> RelationalStructure:
        """The original structure, recovered from the extension."""
        return restrict(self.extended, self.original_image)


def ceil_log(base: int, value: int) -> int:
    """Smallest m >= 0 with base**m >= value."""
    m, power = 0, 1
    while power < value:
        power *= base
        m += 1
    return m


def bound(c: StructureClass, n: int) -> int:
    """Largest number of added elements the constructions may need for ``n`` elements."""
    if n < 1:
        raise ValueError("n must be positive")
    tag = c.tag
    if tag == "tournament":
        return 2
    if tag == "graph":
        return ceil_log(2, n + 1)
    if tag in ("permutation", "poset", "linear-order"):
        return math.ceil((n + 1) / 2)
    if tag == "digraph":
        return ceil_log(4, n + 1)
    if tag == "oriented-graph":
        return ceil_log(3, n + 1)
    if tag in ("kary", "kary-irreflexive", "hypergraph"):
        if c.k is None or c.k < 3:
            raise ValueError(f"no bound for {c} with arity below 3")
        return 1
    raise ValueError(f"unsupported class {c}")


def proper_intervals_contain(s: RelationalStructure, required: int) -> bool:
    """True when every proper interval of ``s`` contains element ``required``."""
    n = s.n
    for u in range(n):
        if u == required:
            continue
        for v in range(u + 1, n):
            if v == required:
                continue
            if not closure_mask(s, (1 << u) | (1 << v)) >> required & 1:
                return False
    return True


def proper_intervals_avoid(s: RelationalStructure, forbidden: int) -> bool:
    """True when no proper interval of ``s`` contains element ``forbidden``."""
    full = (1 << s.n) - 1
    for v in range(s.n):
        if v != forbidden and closure_mask(s, (1 << v) | (1 << forbidden)) != full:
            return False
    return True
