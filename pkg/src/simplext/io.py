"""Plain-text structure files and extension reports.

A structure file starts with ``class <tag> n=<int>`` and continues with one line per
tuple::

    class tournament n=3
    # a 3-cycle
    arc 0 1
    arc 1 2
    arc 2 0

Body keywords are ``edge`` (graphs), ``arc`` (tournaments, digraphs, oriented graphs),
``rel`` (posets and linear orders; covers are enough), ``perm`` (one-line notation) and
``tuple`` (k-ary classes and hypergraphs).  Serialisation writes one normal form: dense
ids, sorted lines, covers only for orders and each hyperedge once.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import permutations

from .extensions.base import ExtensionResult
from .structure import (
    ARC_REL,
    GRAPH_REL,
    KARY_REL,
    ORDER_REL,
    MalformedStructure,
    Permutation,
    RelationalStructure,
    StructureClass,
    check,
    perm_to_structure,
    structure_to_perm,
    transitive_closure,
)

_HEADER = re.compile(r"^class\s+(\S+)\s+n=(\d+)\s*$")
_KEYWORDS = {
    "graph": "edge",
    "tournament": "arc",
    "digraph": "arc",
    "oriented-graph": "arc",
    "poset": "rel",
    "linear-order": "rel",
    "permutation": "perm",
    "kary": "tuple",
    "kary-irreflexive": "tuple",
    "hypergraph": "tuple",
}
BODY_KEYWORDS = frozenset(_KEYWORDS.values())


class StructureFileError(ValueError):
    """Syntax or range error in a structure file, with 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _tokens(text: str):
    """(token, column) pairs of a line, ignoring a trailing comment."""
    body = text.split("#", 1)[0]
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", body)]


def _int(token: str, col: int, lineno: int) -> int:
    if not re.fullmatch(r"-?\d+", token):
        raise StructureFileError(f"expected an integer, got {token!r}", lineno, col)
    return int(token)


def parse_structure(text: str) -> tuple[RelationalStructure, StructureClass]:
    """Parse a structure file; the result is checked against its declared class."""
    header = None
    body = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _tokens(raw)
        if not toks:
            continue
        if header is None:
            m = _HEADER.match(raw.split("#", 1)[0].strip())
            if not m:
                raise StructureFileError("expected header 'class <tag> n=<int>'", lineno, toks[0][1])
            try:
                cls = StructureClass.parse(m.group(1))
            except MalformedStructure as exc:
                raise StructureFileError(str(exc), lineno, raw.index(m.group(1)) + 1) from None
            header = (cls, int(m.group(2)))
            continue
        body.append((lineno, toks))
    if header is None:
        raise StructureFileError("empty structure file", 1, 1)
    cls, n = header
    s = _build(cls, n, body)
    check(s, cls)
    return s, cls


def _build(cls: StructureClass, n: int, body) -> RelationalStructure:
    keyword = _KEYWORDS[cls.tag]
    tuples = []
    perm = None
    for lineno, toks in body:
        word, col = toks[0]
        if word != keyword:
            raise StructureFileError(f"class {cls} expects '{keyword}' lines, got {word!r}",
                                     lineno, col)
        values = [(_int(t, c, lineno), c) for t, c in toks[1:]]
        if keyword == "perm":
            if perm is not None:
                raise StructureFileError("more than one perm line", lineno, col)
            if len(values) != n:
                raise StructureFileError(f"perm needs {n} values, got {len(values)}", lineno, col)
            for v, c in values:
                if not 1 <= v <= n:
                    raise StructureFileError(f"value {v} out of range 1..{n}", lineno, c)
            perm = [v for v, _ in values]
            continue
        arity = cls.k if keyword == "tuple" else 2
        if len(values) != arity:
            raise StructureFileError(f"'{keyword}' needs {arity} ids, got {len(values)}",
                                     lineno, col)
        for v, c in values:
            if not 0 <= v < n:
                raise StructureFileError(f"id {v} out of range 0..{n - 1}", lineno, c)
        tuples.append(tuple(v for v, _ in values))
    if keyword == "perm":
        if perm is None:
            raise StructureFileError("missing perm line", 1, 1)
        if sorted(perm) != list(range(1, n + 1)):
            raise StructureFileError("perm line is not a permutation", body[0][0], 1)
        return perm_to_structure(Permutation(tuple(perm)))
    sig = cls.signature
    if cls.tag == "graph":
        rel = frozenset(tuples) | frozenset((v, u) for u, v in tuples)
    elif cls.tag in ("poset", "linear-order"):
        rel = transitive_closure(n, tuples)
    elif cls.tag == "hypergraph":
        rel = frozenset(p for t in tuples for p in permutations(t))
    else:
        rel = frozenset(tuples)
    return RelationalStructure(n, sig, (rel,))


def _reduction(rel: frozenset) -> list[tuple[int, int]]:
    return sorted((u, v) for u, v in rel
                  if not any((u, w) in rel and (w, v) in rel for w in {b for _, b in rel}))


def serialize_structure(s: RelationalStructure, cls: StructureClass) -> str:
    """Normal form text of ``s``; parsing it gives ``s`` back."""
    lines = [f"class {cls} n={s.n}"]
    tag = cls.tag
    if tag == "permutation":
        lines.append("perm " + " ".join(map(str, structure_to_perm(s).oneline)))
    elif tag == "graph":
        lines += [f"edge {u} {v}" for u, v in sorted(s.relation(GRAPH_REL)) if u < v]
    elif tag in ("tournament", "digraph", "oriented-graph"):
        lines += [f"arc {u} {v}" for u, v in sorted(s.relation(ARC_REL))]
    elif tag in ("poset", "linear-order"):
        lines += [f"rel {u} {v}" for u, v in _reduction(s.relation(ORDER_REL))]
    elif tag == "hypergraph":
        edges = sorted({tuple(sorted(t)) for t in s.relation(KARY_REL)})
        lines += ["tuple " + " ".join(map(str, e)) for e in edges]
    else:
        lines += ["tuple " + " ".join(map(str, t)) for t in sorted(s.relation(KARY_REL))]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------- reports

def _format_value(value) -> str:
    if isinstance(value, (tuple, list)):
        return ",".join(_format_value(v) for v in value)
    return str(value)


def format_report(result: ExtensionResult, cls: StructureClass, simple: bool, bound: int) -> str:
    lines = [serialize_structure(result.extended, cls).rstrip("\n")]
    lines.append("added" + "".join(f" {a}" for a in result.added))
    for key in sorted(result.metadata):
        lines.append(f"metadata {key}={_format_value(result.metadata[key])}")
    lines.append(f"simple {'true' if simple else 'false'}")
    lines.append(f"bound {bound}")
    lines.append(f"added_count {result.added_count}")
    return "\n".join(lines) + "\n"


@dataclass
class Report:
    structure: RelationalStructure
    cls: StructureClass
    fields: dict = field(default_factory=dict)


def parse_report(text: str) -> Report:
    """Split a report into its structure block and its ``key value`` lines."""
    structure_lines, fields = [], {}
    for raw in text.splitlines():
        toks = raw.split()
        if not toks or toks[0] == "class" or toks[0] in BODY_KEYWORDS or toks[0].startswith("#"):
            structure_lines.append(raw)
        elif toks[0] == "metadata":
            key, _, value = raw.split(" ", 1)[1].partition("=")
            fields.setdefault("metadata", {})[key] = value
        else:
            fields[toks[0]] = " ".join(toks[1:])
    s, cls = parse_structure("\n".join(structure_lines))
    return Report(s, cls, fields)
