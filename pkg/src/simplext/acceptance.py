"""Acceptance suite: eleven end-to-end checks over fixed, seeded corpora.

Each ``criterion_N`` returns a :class:`CriterionResult`; :func:`run_all` runs them in
order.  The corpora are deterministic so failures are reproducible.
"""

from __future__ import annotations

import itertools
import logging
import math
import random
import time
from dataclasses import dataclass
from typing import Callable, Iterator

from . import oracle
from .decomposition import substitution_decompose
from .extensions import (
    bound,
    extend_antichain_via_graph,
    extend_digraph,
    extend_graph,
    extend_higher_arity,
    extend_irreflexive_kary,
    extend_oriented_graph,
    extend_permutation,
    extend_poset,
    extend_tournament,
)
from .extensions import digraphs, permutations as perm_mod, posets, tournaments
from .extensions.base import proper_intervals_avoid, proper_intervals_contain
from .intervals import _members, is_simple, maximal_proper_intervals_masks
from .structure import (
    ARC_REL,
    DIGRAPH,
    GRAPH,
    GRAPH_REL,
    ORDER_REL,
    ORIENTED,
    PERMUTATION,
    POSET,
    TOURNAMENT,
    RelationalStructure,
    StructureClass,
    antichain,
    arcs,
    complete_digraph,
    complete_graph,
    graph,
    hypergraph,
    hypergraph_structure,
    identity,
    inflate,
    kary,
    kary_irreflexive,
    kary_structure,
    perm_to_structure,
    poset,
    structure_to_perm,
    transitive_tournament,
    validate,
)

log = logging.getLogger(__name__)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f}s)"


class _Tally:
    """Counts checks and keeps the first few failures."""

    def __init__(self):
        self.checks = 0
        self.failures: list[str] = []

    def require(self, ok: bool, what: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(what)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        if self.ok:
            return f"{self.checks} checks"
        shown = "; ".join(self.failures[:3])
        return f"{len(self.failures)}/{self.checks} checks failed, e.g. {shown}"


# --------------------------------------------------------------------------- corpora

def _pairs_of(n: int):
    return list(itertools.combinations(range(n), 2))


def all_tournaments(n: int) -> Iterator[RelationalStructure]:
    yield from oracle.enumerate_structures(TOURNAMENT, n)


def random_tournament(n: int, rng: random.Random) -> RelationalStructure:
    return arcs(n, [(u, v) if rng.random() < 0.5 else (v, u) for u, v in _pairs_of(n)])


def random_graph(n: int, rng: random.Random) -> RelationalStructure:
    p = rng.random()
    return graph(n, [e for e in _pairs_of(n) if rng.random() < p])


def random_digraph(n: int, rng: random.Random) -> RelationalStructure:
    p = rng.random()
    return arcs(n, [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p])


def random_oriented(n: int, rng: random.Random) -> RelationalStructure:
    p = rng.random()
    out = []
    for u, v in _pairs_of(n):
        if rng.random() < p:
            out.append((u, v) if rng.random() < 0.5 else (v, u))
    return arcs(n, out)


def random_permutation(n: int, rng: random.Random) -> tuple[int, ...]:
    p = list(range(1, n + 1))
    rng.shuffle(p)
    return tuple(p)


def random_poset(n: int, rng: random.Random) -> RelationalStructure:
    """Half plain random orders, half inflations of small random orders."""
    if n >= 4 and rng.random() < 0.5:
        k = rng.randint(2, n - 1)
        sizes = [1] * k
        for _ in range(n - k):
            sizes[rng.randrange(k)] += 1
        return inflate(random_poset(k, rng), [random_poset(s, rng) for s in sizes])
    order = list(range(n))
    rng.shuffle(order)
    p = rng.choice([0.15, 0.3, 0.5, 0.8])
    return poset(n, [(order[i], order[j]) for i, j in _pairs_of(n) if rng.random() < p])


def random_ternary(n: int, rng: random.Random, irreflexive: bool = False) -> RelationalStructure:
    p = rng.choice([0.05, 0.2, 0.5])
    tuples = [t for t in itertools.product(range(n), repeat=3)
              if (not irreflexive or len(set(t)) == 3) and rng.random() < p]
    return kary_structure(n, 3, tuples)


def random_hypergraph(n: int, rng: random.Random) -> RelationalStructure:
    p = rng.choice([0.2, 0.5, 0.8])
    return hypergraph_structure(n, 3, [e for e in itertools.combinations(range(n), 3)
                                       if rng.random() < p])


def _rng(criterion: int) -> random.Random:
    return random.Random(1000 + criterion)


def tournament_corpus() -> Iterator[RelationalStructure]:
    for n in range(1, 6):
        yield from all_tournaments(n)
    rng = _rng(1)
    for n in (6, 7, 10):
        for _ in range(500):
            yield random_tournament(n, rng)


def graph_corpus() -> Iterator[RelationalStructure]:
    for n in range(1, 17):
        yield complete_graph(n)
    rng = _rng(4)
    for n in range(2, 9):
        for _ in range(500):
            yield random_graph(n, rng)


def permutation_corpus() -> Iterator[tuple[int, ...]]:
    for n in range(2, 7):
        yield from itertools.permutations(range(1, n + 1))
    rng = _rng(5)
    for n in (7, 8, 9):
        for _ in range(500):
            yield random_permutation(n, rng)


def poset_corpus() -> Iterator[RelationalStructure]:
    for n in range(1, 6):
        yield from oracle.enumerate_structures(POSET, n)
    rng = _rng(6)
    for n in (6, 7, 8):
        for _ in range(300):
            yield random_poset(n, rng)


def digraph_corpus() -> Iterator[RelationalStructure]:
    for n in range(1, 16):
        yield complete_digraph(n)
        yield arcs(n, [])
    for n in range(1, 11):
        yield transitive_tournament(n)
    rng = _rng(7)
    for n in range(2, 9):
        for _ in range(300):
            yield random_digraph(n, rng)


def oriented_corpus() -> Iterator[RelationalStructure]:
    for n in range(1, 17):
        yield arcs(n, [])
    for n in range(1, 6):
        yield from all_tournaments(n)
    rng = _rng(8)
    for n in range(2, 9):
        for _ in range(300):
            yield random_oriented(n, rng)


def higher_corpus() -> Iterator[tuple[str, RelationalStructure, StructureClass]]:
    rng = _rng(9)
    for n in range(3, 9):
        for _ in range(300):
            yield "any", random_ternary(n, rng), kary(3)
        for _ in range(300):
            yield "irreflexive", random_ternary(n, rng, irreflexive=True), kary_irreflexive(3)
        for _ in range(50):
            yield "hypergraph", random_hypergraph(n, rng), hypergraph(3)
    tuples4 = [t for t in itertools.product(range(6), repeat=4) if rng.random() < 0.1]
    yield "any", kary_structure(6, 4, tuples4), kary(4)
    tuples4 = [t for t in itertools.permutations(range(6), 4) if rng.random() < 0.1]
    yield "irreflexive", kary_structure(6, 4, tuples4), kary_irreflexive(4)


# --------------------------------------------------------------------------- criteria

def criterion_1() -> tuple[bool, str]:
    tally = _Tally()
    before = tournaments.fallback_count
    for t in tournament_corpus():
        ext = extend_tournament(t)
        best = min((r for r in (ext.t1, ext.t2, ext.t12) if r is not None and r.is_simple),
                   key=lambda r: r.added_count, default=None)
        tally.require(best is not None and best.added_count <= 2 and best.restore() == t,
                      f"n={t.n} {sorted(t.relation(ARC_REL))}")
    fallbacks = tournaments.fallback_count - before
    tally.require(fallbacks == 0, f"{fallbacks} exhaustive fallbacks")
    return tally.ok, tally.summary()


def criterion_2() -> tuple[bool, str]:
    tally = _Tally()
    expected = {5: 2, 7: 2, 9: 2, 2: 1, 4: 1, 6: 1, 3: 2}
    found = {}
    for n, want in sorted(expected.items()):
        got = oracle.minimal_extension_size(transitive_tournament(n), TOURNAMENT,
                                            oracle.SearchBudget(2, min_added=1))
        found[n] = got
        tally.require(got == want, f"chain-{n}: {got} != {want}")
    return tally.ok, tally.summary() + f", sizes {found}"


def criterion_3() -> tuple[bool, str]:
    tally = _Tally()
    for n in range(1, 17):
        r = extend_graph(complete_graph(n))
        edges = r.extended.relation(GRAPH_REL)
        independent = not any((a, b) in edges for a in r.added for b in r.added)
        tally.require(r.added_count == math.ceil(math.log2(n + 1)) and independent and r.is_simple,
                      f"K{n}: added {r.added_count}")
    k3 = oracle.minimal_extension_size(complete_graph(3), GRAPH, oracle.SearchBudget(2))
    tally.require(k3 == 2, f"K3 minimum {k3}")
    k7 = oracle.minimal_extension_size(complete_graph(7), GRAPH, oracle.SearchBudget(2))
    tally.require(k7 is None, f"K7 within 2: {k7}")
    k7_3 = oracle.minimal_extension_size(complete_graph(7), GRAPH, oracle.SearchBudget(3))
    tally.require(k7_3 == 3, f"K7 within 3: {k7_3}")
    return tally.ok, tally.summary()


def criterion_4() -> tuple[bool, str]:
    tally = _Tally()
    rng = _rng(4)
    for n in range(2, 9):
        for _ in range(500):
            g = random_graph(n, rng)
            r = extend_graph(g)
            tally.require(r.is_simple and r.added_count <= bound(GRAPH, n) and r.restore() == g,
                          f"n={n} {sorted(g.relation(GRAPH_REL))}")
    return tally.ok, tally.summary()


def _perm_variant_ok(r, p: tuple[int, ...], a: str) -> bool:
    k = r.extended.n
    line = structure_to_perm(r.extended).oneline
    entry, exit_ = r.metadata["entry"], r.metadata["exit"]
    ok = entry == 0 and line[entry] not in (1, k)
    ok &= line[exit_] == (k if a == perm_mod.UP else 1) and exit_ not in (0, k - 1)
    ok &= r.added_count <= bound(PERMUTATION, len(p)) and r.restore() == perm_to_structure(p)
    if not r.is_simple:
        ok &= proper_intervals_contain(r.extended, exit_)
        ok &= proper_intervals_avoid(r.extended, r.original_image[-1])
    return bool(ok)


def criterion_5() -> tuple[bool, str]:
    tally = _Tally()
    base = {"12": ("2413", "3124"), "123": ("31524", "42135"), "132": ("35142", "41253")}
    for p, (up, down) in base.items():
        pair = extend_permutation(p)
        got = (pair.up.metadata["oneline"], pair.down.metadata["oneline"])
        tally.require(got == (up, down), f"{p} -> {got}")
    for n in range(2, 14):
        pair = extend_permutation(identity(n))
        best = pair.best
        tally.require(best.is_simple and best.added_count == math.ceil((n + 1) / 2),
                      f"identity-{n}: added {best.added_count}")
    m = oracle.minimal_extension_size(perm_to_structure("1234"), PERMUTATION,
                                      oracle.SearchBudget(3))
    tally.require(m == 3, f"identity-4 minimum {m}")
    for p in permutation_corpus():
        pair = extend_permutation(p)
        ok = (pair.up.is_simple or pair.down.is_simple)
        ok = ok and _perm_variant_ok(pair.up, p, perm_mod.UP)
        ok = ok and _perm_variant_ok(pair.down, p, perm_mod.DOWN)
        tally.require(ok, "".join(map(str, p)) if len(p) < 10 else str(p))
    return tally.ok, tally.summary()


def _poset_quad_ok(p: RelationalStructure) -> bool:
    quad = extend_poset(p)
    ok = False
    for a in posets.VARIANTS:
        r = quad[a]
        e = posets.PosetExt(r.extended.n, r.extended.relation(ORDER_REL), p.n,
                            r.metadata["ext1"], r.metadata["ext2"])
        if not (posets.contract_ok(e, a) and r.added_count <= bound(POSET, p.n)
                and r.restore() == p and not validate(r.extended, POSET)):
            return False
        ok = ok or r.is_simple
    return ok


def criterion_6() -> tuple[bool, str]:
    tally = _Tally()
    before = posets.fallback_count
    for p in poset_corpus():
        tally.require(_poset_quad_ok(p), f"n={p.n} {sorted(p.relation(ORDER_REL))}")
    for n in range(1, 17):
        r = extend_antichain_via_graph(antichain(n))
        tally.require(r.is_simple and r.added_count <= math.ceil(math.log2(n + 1))
                      and not validate(r.extended, POSET), f"antichain-{n}")
    fallbacks = posets.fallback_count - before
    tally.require(fallbacks == 0, f"{fallbacks} exhaustive fallbacks")
    return tally.ok, tally.summary()


def criterion_7() -> tuple[bool, str]:
    tally = _Tally()
    for d in digraph_corpus():
        r = extend_digraph(d)
        ok = r.is_simple and r.added_count <= bound(DIGRAPH, d.n) and r.restore() == d
        tally.require(ok, f"n={d.n} {sorted(d.relation(ARC_REL))}")
    for n in range(1, 8):
        r = extend_digraph(transitive_tournament(n))
        tally.require(r.added_count == 1, f"linear digraph {n}: added {r.added_count}")
    return tally.ok, tally.summary()


def criterion_8() -> tuple[bool, str]:
    tally = _Tally()
    before = digraphs.fallback_count
    for g in oriented_corpus():
        r = extend_oriented_graph(g)
        ok = r.is_simple and r.added_count <= bound(ORIENTED, g.n) and r.restore() == g
        ok = ok and not validate(r.extended, ORIENTED)
        if g.n <= 5 and not validate(g, TOURNAMENT):
            ok = ok and r.added_count == 1
        tally.require(ok, f"n={g.n} {sorted(g.relation(ARC_REL))}")
    fallbacks = digraphs.fallback_count - before
    tally.require(fallbacks == 0, f"{fallbacks} fallbacks")
    return tally.ok, tally.summary()


def criterion_9() -> tuple[bool, str]:
    tally = _Tally()
    for kind, s, cls in higher_corpus():
        if kind == "any":
            r = extend_higher_arity(s)
        else:
            r = extend_irreflexive_kary(s)
        ok = r.added_count == 1 and r.is_simple and r.restore() == s
        ok = ok and not validate(r.extended, cls)
        tally.require(ok, f"{kind} {cls} n={s.n}")
    return tally.ok, tally.summary()


def _decomposition_ok(s: RelationalStructure, cls: StructureClass | None) -> bool:
    if s.n < 2:
        return True
    d = substitution_decompose(s, cls)
    if d.recompose() != s or not is_simple(d.quotient):
        return False
    if d.quotient.n > 2:
        masks = maximal_proper_intervals_masks(s)
        return sorted(tuple(_members(m)) for m in masks) == sorted(d.parts)
    return True


def criterion_10() -> tuple[bool, str]:
    tally = _Tally()
    corpora: list[tuple[StructureClass | None, Callable[[], Iterator]]] = [
        (TOURNAMENT, tournament_corpus),
        (GRAPH, graph_corpus),
        (PERMUTATION, lambda: (perm_to_structure(p) for p in permutation_corpus())),
        (POSET, poset_corpus),
        (DIGRAPH, digraph_corpus),
        (ORIENTED, oriented_corpus),
        (None, lambda: (s for _, s, _ in higher_corpus())),
    ]
    for cls, corpus in corpora:
        for s in corpus():
            tally.require(_decomposition_ok(s, cls), f"{cls} n={s.n}")
    return tally.ok, tally.summary()


def _random_of(cls: StructureClass, n: int, rng: random.Random) -> RelationalStructure:
    if cls == TOURNAMENT:
        return random_tournament(n, rng)
    if cls == GRAPH:
        return random_graph(n, rng)
    if cls == PERMUTATION:
        return perm_to_structure(random_permutation(n, rng))
    return random_poset(n, rng)


def criterion_11() -> tuple[bool, str]:
    tally = _Tally()
    classes = (TOURNAMENT, GRAPH, PERMUTATION, POSET)
    for cls in classes:
        for n in range(1, 7):
            for s in oracle.enumerate_structures(cls, n):
                tally.require(oracle.exhaustive_is_simple(s) == is_simple(s), f"{cls} n={n}")
    rng = _rng(11)
    for cls in classes:
        for i in range(1000):
            n = 2 + i % 7
            s = _random_of(cls, n, rng)
            tally.require(oracle.exhaustive_is_simple(s) == is_simple(s), f"random {cls} n={n}")
    simple4 = sorted(str(structure_to_perm(s)) for s in oracle.enumerate_structures(PERMUTATION, 4)
                     if oracle.exhaustive_is_simple(s))
    tally.require(simple4 == ["2413", "3142"], f"simple permutations of length 4: {simple4}")
    return tally.ok, tally.summary()


CRITERIA: list[tuple[int, str, Callable[[], tuple[bool, str]]]] = [
    (1, "tournaments", criterion_1),
    (2, "odd chains", criterion_2),
    (3, "complete graphs", criterion_3),
    (4, "random graphs", criterion_4),
    (5, "permutations", criterion_5),
    (6, "posets", criterion_6),
    (7, "digraphs", criterion_7),
    (8, "oriented graphs", criterion_8),
    (9, "higher arity", criterion_9),
    (10, "decomposition", criterion_10),
    (11, "oracle equivalence", criterion_11),
]


def run_criterion(number: int) -> CriterionResult:
    for num, name, fn in CRITERIA:
        if num == number:
            start = time.perf_counter()
            try:
                passed, detail = fn()
            except Exception as exc:  # a crash is a failure, reported like one
                passed, detail = False, f"raised {type(exc).__name__}: {exc}"
            return CriterionResult(num, name, passed, detail, time.perf_counter() - start)
    raise ValueError(f"no criterion {number}")


def run_all(numbers=None) -> list[CriterionResult]:
    wanted = [num for num, _, _ in CRITERIA] if numbers is None else list(numbers)
    return [run_criterion(n) for n in wanted]
