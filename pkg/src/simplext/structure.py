"""Finite relational structures, structure classes and the basic operations on them.

A structure has a dense ground set ``0..n-1`` and one relation per symbol of its
signature.  Relations are frozensets of integer tuples, so two structures with the
same signature compare equal exactly when they hold the same tuples.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product
from typing import Iterable, Mapping, Sequence

GRAPH_REL = "E"
ARC_REL = "A"
ORDER_REL = "lt"
VALUE_REL = "prec"
KARY_REL = "R"


class MalformedStructure(ValueError):
    """Raised when a structure or an argument does not satisfy basic invariants."""


class AxiomViolation(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True)
class RelationSignature:
    name: str
    arity: int

    def __post_init__(self):
        if self.arity < 1:
            raise MalformedStructure(f"relation {self.name!r} has arity {self.arity} < 1")


@dataclass(frozen=True)
class RelationalStructure:
    n: int
    signature: tuple[RelationSignature, ...]
    relations: tuple[frozenset, ...]
    # old ids of the elements, set by restrict(); ignored by equality
    provenance: tuple[int, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.n < 0:
            raise MalformedStructure("negative ground-set size")
        if len(self.signature) != len(self.relations):
            raise MalformedStructure("signature and relations differ in length")
        names = [sig.name for sig in self.signature]
        if len(set(names)) != len(names):
            raise MalformedStructure("duplicate relation symbol")
        for sig, rel in zip(self.signature, self.relations):
            for t in rel:
                if len(t) != sig.arity:
                    raise MalformedStructure(f"tuple {t} has wrong arity for {sig.name!r}")
                for e in t:
                    if not 0 <= e < self.n:
                        raise MalformedStructure(f"element {e} of {t} out of range 0..{self.n - 1}")

    @classmethod
    def build(cls, n: int, relations: Mapping[str, Iterable[Sequence[int]]],
              arities: Mapping[str, int] | None = None) -> "RelationalStructure":
        """Build from a mapping ``name -> tuples``; arities default to the tuple lengths."""
        sig, rels = [], []
        for name, tuples in relations.items():
            tuples = frozenset(tuple(t) for t in tuples)
            if arities is not None and name in arities:
                arity = arities[name]
            elif tuples:
                arity = len(next(iter(tuples)))
            else:
                raise MalformedStructure(f"cannot infer arity of empty relation {name!r}")
            sig.append(RelationSignature(name, arity))
            rels.append(tuples)
        return cls(n, tuple(sig), tuple(rels))

    def relation(self, name: str) -> frozenset:
        for sig, rel in zip(self.signature, self.relations):
            if sig.name == name:
                return rel
        raise KeyError(name)

    def arity(self, name: str) -> int:
        for sig in self.signature:
            if sig.name == name:
                return sig.arity
        raise KeyError(name)

    def sorted_tuples(self, name: str) -> list[tuple[int, ...]]:
        return sorted(self.relation(name))

    def with_relations(self, n: int, relations: Sequence[Iterable[Sequence[int]]]) -> "RelationalStructure":
        """Same signature, new ground set and tuples."""
        return RelationalStructure(n, self.signature,
                                   tuple(frozenset(tuple(t) for t in r) for r in relations))

    @property
    def is_binary(self) -> bool:
        return all(sig.arity == 2 for sig in self.signature)

    @cached_property
    def masks(self) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
        """Per binary relation, (out-masks, in-masks) indexed by element."""
        out = []
        for sig, rel in zip(self.signature, self.relations):
            if sig.arity != 2:
                continue
            outs = [0] * self.n
            ins = [0] * self.n
            for u, v in rel:
                outs[u] |= 1 << v
                ins[v] |= 1 << u
            out.append((tuple(outs), tuple(ins)))
        return tuple(out)

    def holds(self, name: str, *elements: int) -> bool:
        return tuple(elements) in self.relation(name)


# --------------------------------------------------------------------------- classes

_TAG_RE = re.compile(r"^(kary|kary-irreflexive|hypergraph)\((\d+)\)$")
_SIMPLE_TAGS = ("graph", "tournament", "digraph", "oriented-graph", "poset",
                "linear-order", "permutation")


@dataclass(frozen=True)
class StructureClass:
    tag: str
    k: int | None = None

    def __post_init__(self):
        if self.tag in _SIMPLE_TAGS:
            if self.k is not None:
                raise MalformedStructure(f"class {self.tag} takes no arity")
        elif self.tag in ("kary", "kary-irreflexive", "hypergraph"):
            if self.k is None or self.k < 1:
                raise MalformedStructure(f"class {self.tag} needs an arity")
        else:
            raise MalformedStructure(f"unknown structure class {self.tag!r}")

    @classmethod
    def parse(cls, text: str) -> "StructureClass":
        text = text.strip()
        if text in _SIMPLE_TAGS:
            return cls(text)
        m = _TAG_RE.match(text)
        if not m:
            raise MalformedStructure(f"unknown structure class {text!r}")
        return cls(m.group(1), int(m.group(2)))

    def __str__(self):
        return self.tag if self.k is None else f"{self.tag}({self.k})"

    @property
    def signature(self) -> tuple[RelationSignature, ...]:
        if self.tag == "graph":
            return (RelationSignature(GRAPH_REL, 2),)
        if self.tag in ("tournament", "digraph", "oriented-graph"):
            return (RelationSignature(ARC_REL, 2),)
        if self.tag in ("poset", "linear-order"):
            return (RelationSignature(ORDER_REL, 2),)
        if self.tag == "permutation":
            return (RelationSignature(ORDER_REL, 2), RelationSignature(VALUE_REL, 2))
        return (RelationSignature(KARY_REL, self.k),)

    def empty(self, n: int) -> RelationalStructure:
        return RelationalStructure(n, self.signature, tuple(frozenset() for _ in self.signature))


GRAPH = StructureClass("graph")
TOURNAMENT = StructureClass("tournament")
DIGRAPH = StructureClass("digraph")
ORIENTED = StructureClass("oriented-graph")
POSET = StructureClass("poset")
LINEAR_ORDER = StructureClass("linear-order")
PERMUTATION = StructureClass("permutation")


def kary(k: int) -> StructureClass:
    return StructureClass("kary", k)


def kary_irreflexive(k: int) -> StructureClass:
    return StructureClass("kary-irreflexive", k)


def hypergraph(k: int) -> StructureClass:
    return StructureClass("hypergraph", k)


@dataclass(frozen=True)
class Violation:
    axiom: str
    relation: str
    witness: tuple[int, ...]

    def __str__(self):
        return f"{self.axiom} violated in {self.relation!r} at {self.witness}"


def _irreflexive(name, rel):
    return [Violation("irreflexivity", name, t) for t in sorted(rel) if len(set(t)) < len(t)]


def _asymmetric(name, rel):
    return [Violation("asymmetry", name, (u, v)) for u, v in sorted(rel) if (v, u) in rel]


def _symmetric(name, rel):
    return [Violation("symmetry", name, (u, v)) for u, v in sorted(rel) if (v, u) not in rel]


def _total(name, rel, n):
    return [Violation("trichotomy", name, (u, v)) for u in range(n) for v in range(u + 1, n)
            if (u, v) not in rel and (v, u) not in rel]


def _transitive(name, rel, n):
    succ = [set() for _ in range(n)]
    for u, v in rel:
        succ[u].add(v)
    out = []
    for u, v in sorted(rel):
        for w in sorted(succ[v]):
            if (u, w) not in rel:
                out.append(Violation("transitivity", name, (u, v, w)))
    return out


def _linear(name, rel, n):
    return _asymmetric(name, rel) + _transitive(name, rel, n) + _total(name, rel, n)


def validate(s: RelationalStructure, c: StructureClass) -> list[Violation]:
    """Return the axiom violations of ``s`` under class ``c``; an empty list means ok.

    Raises MalformedStructure when the signature of ``s`` does not match the class.
    """
    if tuple(s.signature) != c.signature:
        raise MalformedStructure(
            f"signature {[(g.name, g.arity) for g in s.signature]} does not fit class {c}")
    n = s.n
    tag = c.tag
    if tag == "graph":
        rel = s.relation(GRAPH_REL)
        return _irreflexive(GRAPH_REL, rel) + _symmetric(GRAPH_REL, rel)
    if tag == "tournament":
        rel = s.relation(ARC_REL)
        return _asymmetric(ARC_REL, rel) + _total(ARC_REL, rel, n)
    if tag == "digraph":
        return []
    if tag == "oriented-graph":
        return _asymmetric(ARC_REL, s.relation(ARC_REL))
    if tag == "poset":
        rel = s.relation(ORDER_REL)
        return _asymmetric(ORDER_REL, rel) + _transitive(ORDER_REL, rel, n)
    if tag == "linear-order":
        return _linear(ORDER_REL, s.relation(ORDER_REL), n)
    if tag == "permutation":
        pos = s.relation(ORDER_REL)
        out = [Violation("positional order", ORDER_REL, (u, v))
               for u in range(n) for v in range(u + 1, n) if (u, v) not in pos]
        out += [Violation("positional order", ORDER_REL, t) for t in sorted(pos) if t[0] >= t[1]]
        return out + _linear(VALUE_REL, s.relation(VALUE_REL), n)
    rel = s.relation(KARY_REL)
    if tag == "kary":
        return []
    out = _irreflexive(KARY_REL, rel)
    if tag == "hypergraph":
        for t in sorted(rel):
            for p in permutations(t):
                if p not in rel:
                    out.append(Violation("entry symmetry", KARY_REL, t))
                    break
    return out


def check(s: RelationalStructure, c: StructureClass) -> RelationalStructure:
    violations = validate(s, c)
    if violations:
        raise AxiomViolation(violations)
    return s


# --------------------------------------------------------------------------- restriction / inflation

def induced(s: RelationalStructure, elements: Sequence[int]) -> RelationalStructure:
    """Substructure on ``elements``, re-indexed in the order given."""
    index = {}
    for i, e in enumerate(elements):
        if not 0 <= e < s.n:
            raise MalformedStructure(f"element {e} out of range 0..{s.n - 1}")
        if e in index:
            raise MalformedStructure(f"element {e} repeated")
        index[e] = i
    rels = []
    for rel in s.relations:
        rels.append(frozenset(tuple(index[e] for e in t) for t in rel
                              if all(e in index for e in t)))
    return RelationalStructure(len(index), s.signature, tuple(rels), provenance=tuple(elements))


def restrict(s: RelationalStructure, subset: Iterable[int]) -> RelationalStructure:
    """Substructure on ``subset``; retained elements keep their relative order.

    The old ids are recorded in ``provenance`` of the result.
    """
    return induced(s, sorted(set(subset)))


def inflate(quotient: RelationalStructure, blocks: Sequence[RelationalStructure],
            placement: Sequence[Sequence[int]] | None = None) -> RelationalStructure:
    """Replace element ``i`` of ``quotient`` by ``blocks[i]``.

    Without ``placement`` the block ground sets are laid out one after another; otherwise
    ``placement[i][j]`` is the id given to element ``j`` of block ``i``.
    """
    if len(blocks) != quotient.n:
        raise MalformedStructure("need one block per quotient element")
    for b in blocks:
        if b.signature != quotient.signature:
            raise MalformedStructure("block signature differs from quotient signature")
        if b.n == 0:
            raise MalformedStructure("blocks must be nonempty")
    if placement is None:
        placement, start = [], 0
        for b in blocks:
            placement.append(range(start, start + b.n))
            start += b.n
    total = sum(b.n for b in blocks)
    seen = sorted(e for p in placement for e in p)
    if seen != list(range(total)) or any(len(p) != b.n for p, b in zip(placement, blocks)):
        raise MalformedStructure("placement must partition the ground set")
    rels = []
    for r, qrel in enumerate(quotient.relations):
        tuples = set()
        for i, b in enumerate(blocks):
            place = placement[i]
            tuples.update(tuple(place[e] for e in t) for t in b.relations[r])
        for qt in qrel:
            if len(set(qt)) == 1:
                continue
            for t in product(*(placement[q] for q in qt)):
                tuples.add(t)
        rels.append(frozenset(tuples))
    return RelationalStructure(total, quotient.signature, tuple(rels))


# --------------------------------------------------------------------------- constructors

def graph(n: int, edges: Iterable[Sequence[int]]) -> RelationalStructure:
    rel = set()
    for u, v in edges:
        rel.add((u, v))
        rel.add((v, u))
    return RelationalStructure(n, GRAPH.signature, (frozenset(rel),))


def arcs(n: int, pairs: Iterable[Sequence[int]]) -> RelationalStructure:
    """Binary arc relation; used for tournaments, digraphs and oriented graphs."""
    return RelationalStructure(n, DIGRAPH.signature, (frozenset(tuple(p) for p in pairs),))


def transitive_closure(n: int, pairs: Iterable[Sequence[int]]) -> frozenset:
    up = [0] * n
    for u, v in pairs:
        up[u] |= 1 << v
    changed = True
    while changed:
        changed = False
        for u in range(n):
            m, acc = up[u], up[u]
            while m:
                low = m & -m
                acc |= up[low.bit_length() - 1]
                m ^= low
            if acc != up[u]:
                up[u] = acc
                changed = True
    return frozenset((u, v) for u in range(n) for v in range(n) if up[u] >> v & 1)


def poset(n: int, pairs: Iterable[Sequence[int]]) -> RelationalStructure:
    """Poset from any generating set of strict relations ``u < v`` (e.g. cover relations)."""
    return RelationalStructure(n, POSET.signature, (transitive_closure(n, pairs),))


def chain(n: int) -> RelationalStructure:
    return poset(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> RelationalStructure:
    return POSET.empty(n)


def transitive_tournament(n: int) -> RelationalStructure:
    return arcs(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_graph(n: int) -> RelationalStructure:
    return graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_digraph(n: int) -> RelationalStructure:
    return arcs(n, [(i, j) for i in range(n) for j in range(n) if i != j])


def kary_structure(n: int, k: int, tuples: Iterable[Sequence[int]]) -> RelationalStructure:
    return RelationalStructure(n, kary(k).signature, (frozenset(tuple(t) for t in tuples),))


def hypergraph_structure(n: int, k: int, edges: Iterable[Iterable[int]]) -> RelationalStructure:
    """k-uniform hypergraph; every edge is materialised under all entry permutations."""
    rel = set()
    for e in edges:
        e = tuple(e)
        if len(e) != k or len(set(e)) != k:
            raise MalformedStructure(f"hyperedge {e} is not a {k}-set")
        rel.update(permutations(e))
    return RelationalStructure(n, kary(k).signature, (frozenset(rel),))


def complement_graph(g: RelationalStructure) -> RelationalStructure:
    rel = g.relation(GRAPH_REL)
    return graph(g.n, [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if (u, v) not in rel])


def dual(s: RelationalStructure) -> RelationalStructure:
    """Reverse every binary relation (the dual order for posets)."""
    rels = []
    for sig, rel in zip(s.signature, s.relations):
        if sig.arity != 2:
            raise MalformedStructure("dual is defined for binary signatures only")
        rels.append(frozenset((v, u) for u, v in rel))
    return RelationalStructure(s.n, s.signature, tuple(rels))


def comparability_graph(p: RelationalStructure) -> RelationalStructure:
    check(p, POSET)
    return graph(p.n, p.relation(ORDER_REL))


def underlying_graph(d: RelationalStructure) -> RelationalStructure:
    return graph(d.n, [(u, v) for u, v in d.relation(ARC_REL) if u != v])


# --------------------------------------------------------------------------- permutations

@dataclass(frozen=True)
class Permutation:
    """A permutation of ``1..n`` in one-line notation."""

    oneline: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "oneline", tuple(self.oneline))
        if sorted(self.oneline) != list(range(1, len(self.oneline) + 1)):
            raise MalformedStructure(f"{self.oneline} is not a permutation of 1..n")

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        text = text.strip()
        if " " in text or "," in text:
            return cls(tuple(int(t) for t in re.split(r"[ ,]+", text) if t))
        return cls(tuple(int(ch) for ch in text))

    def __len__(self):
        return len(self.oneline)

    def __str__(self):
        if len(self.oneline) < 10:
            return "".join(map(str, self.oneline))
        return " ".join(map(str, self.oneline))

    def complement(self) -> "Permutation":
        n = len(self.oneline)
        return Permutation(tuple(n + 1 - v for v in self.oneline))


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def perm_to_structure(p: Permutation | Sequence[int] | str) -> RelationalStructure:
    """Positions with the positional order ``lt`` and the value order ``prec``."""
    if isinstance(p, str):
        p = Permutation.parse(p)
    elif not isinstance(p, Permutation):
        p = Permutation(tuple(p))
    vals = p.oneline
    n = len(vals)
    pos = frozenset((i, j) for i in range(n) for j in range(i + 1, n))
    val = frozenset((i, j) for i in range(n) for j in range(n) if vals[i] < vals[j])
    return RelationalStructure(n, PERMUTATION.signature, (pos, val))


def structure_to_perm(s: RelationalStructure) -> Permutation:
    check(s, PERMUTATION)
    below = [0] * s.n
    for i, j in s.relation(VALUE_REL):
        below[j] += 1
    return Permutation(tuple(b + 1 for b in below))


def guess_class(s: RelationalStructure) -> StructureClass:
    """Most specific class whose axioms ``s`` satisfies, judged from its signature."""
    names = tuple(sig.name for sig in s.signature)
    candidates = {
        (GRAPH_REL,): [GRAPH],
        (ARC_REL,): [TOURNAMENT, ORIENTED, DIGRAPH],
        (ORDER_REL,): [LINEAR_ORDER, POSET],
        (ORDER_REL, VALUE_REL): [PERMUTATION],
    }.get(names)
    if candidates is None and names == (KARY_REL,):
        k = s.signature[0].arity
        candidates = [hypergraph(k), kary_irreflexive(k), kary(k)]
    for c in candidates or []:
        try:
            if not validate(s, c):
                return c
        except MalformedStructure:
            continue
    raise MalformedStructure("structure fits no known class")
