"""Command line interface: ``simplext <command> ...``.

Exit codes: 0 success, 1 bad input (syntax, axioms, usage), 2 internal contract
violation such as a constructed extension that is not simple.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import oracle
from .decomposition import decomposition_tree, substitution_decompose
from .extensions import (
    ConstructionError,
    bound,
    extend,
    extend_permutation,
    extend_poset,
    extend_tournament,
)
from .extensions.base import ExtensionResult
from .intervals import is_simple, maximal_proper_intervals
from .io import StructureFileError, format_report, parse_structure, serialize_structure
from .structure import AxiomViolation, MalformedStructure, StructureClass, structure_to_perm

EXIT_OK, EXIT_INPUT, EXIT_CONTRACT = 0, 1, 2

VARIANTS = ("auto", "t1", "t2", "t12", "up", "down", "updown", "downup")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="simplext", description="Intervals, decompositions and simple extensions "
                                             "of finite relational structures.")
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True
    c = sub.add_parser("check", help="report whether a structure is simple")
    c.add_argument("file")
    c = sub.add_parser("decompose", help="quotient and blocks of the substitution decomposition")
    c.add_argument("file")
    c = sub.add_parser("tree", help="decomposition tree as an s-expression")
    c.add_argument("file")
    c = sub.add_parser("extend", help="build a simple extension")
    c.add_argument("file")
    c.add_argument("--variant", choices=VARIANTS, default="auto")
    c = sub.add_parser("search-min", help="fewest added elements giving a simple extension")
    c.add_argument("file")
    c.add_argument("--max-add", type=int, required=True)
    c.add_argument("--min-add", type=int, default=0)
    c.add_argument("--max-candidates", type=int, default=None)
    c = sub.add_parser("bound", help="bound on added elements for a class and size")
    c.add_argument("cls", metavar="CLASS")
    c.add_argument("n", type=int)
    c = sub.add_parser("selftest", help="run the acceptance suite")
    c.add_argument("--criterion", type=int, action="append", default=None)
    return p


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_structure(text)


def _ids(elements) -> str:
    return " ".join(str(e) for e in sorted(elements))


def _cmd_check(args, out) -> int:
    s, _ = _load(args.file)
    if is_simple(s):
        print("simple", file=out)
        return EXIT_OK
    print("not simple", file=out)
    largest = max(maximal_proper_intervals(s), key=lambda i: (len(i), [-e for e in sorted(i)]))
    print(f"interval {_ids(largest)}", file=out)
    return EXIT_OK


def _cmd_decompose(args, out) -> int:
    s, cls = _load(args.file)
    if s.n < 2:
        print("single element; nothing to decompose", file=out)
        return EXIT_OK
    d = substitution_decompose(s, cls)
    print(f"degenerate {'true' if d.degenerate else 'false'}", file=out)
    if cls.tag == "permutation":
        print(f"quotient {structure_to_perm(d.quotient)}", file=out)
    else:
        print("quotient", file=out)
        for line in serialize_structure(d.quotient, cls).splitlines():
            print(f"  {line}", file=out)
    for i, part in enumerate(d.parts):
        print(f"block {i}: {_ids(part)}", file=out)
    return EXIT_OK


def _cmd_tree(args, out) -> int:
    s, cls = _load(args.file)
    print(decomposition_tree(s, cls).serialize(), file=out)
    return EXIT_OK


def _variant(s, cls: StructureClass, variant: str) -> ExtensionResult:
    if variant == "auto":
        return extend(s, cls)
    if variant in ("t1", "t2", "t12"):
        if cls.tag != "tournament":
            raise UsageError(f"variant {variant} needs a tournament")
        ext = extend_tournament(s)
        r = getattr(ext, variant)
        if r is None:
            raise UsageError("t12 is only built when neither t1 nor t2 is simple")
        return r
    if cls.tag == "permutation" and variant in ("up", "down"):
        return extend_permutation(structure_to_perm(s)).variant(variant)
    if cls.tag == "poset":
        return extend_poset(s)[variant]
    raise UsageError(f"variant {variant} does not apply to class {cls}")


def _cmd_extend(args, out) -> int:
    s, cls = _load(args.file)
    try:
        r = _variant(s, cls, args.variant)
    except ConstructionError as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    claimed = r.is_simple
    # second opinion from the subset-scan oracle when it is affordable
    if r.extended.n <= oracle.ORACLE_LIMIT:
        confirmed = oracle.exhaustive_is_simple(r.extended)
    else:
        confirmed = is_simple(r.extended)
    if claimed != confirmed or (args.variant == "auto" and not confirmed):
        print("contract violation: simplicity check disagrees with the construction",
              file=sys.stderr)
        return EXIT_CONTRACT
    print(format_report(r, cls, confirmed, bound(cls, s.n)), end="", file=out)
    return EXIT_OK


def _cmd_search(args, out) -> int:
    s, cls = _load(args.file)
    budget = oracle.SearchBudget(args.max_add, args.max_candidates, args.min_add)
    try:
        m = oracle.minimal_extension_size(s, cls, budget)
    except oracle.SearchSpaceTooLarge as exc:
        raise UsageError(str(exc)) from None
    if m is None:
        print(f"none within {args.max_add}", file=out)
    else:
        print(f"minimal {m}", file=out)
    return EXIT_OK


def _cmd_bound(args, out) -> int:
    try:
        cls = StructureClass.parse(args.cls)
        print(bound(cls, args.n), file=out)
    except (MalformedStructure, ValueError) as exc:
        raise UsageError(str(exc)) from None
    return EXIT_OK


def _cmd_selftest(args, out) -> int:
    from .acceptance import run_all

    results = run_all(args.criterion)
    for r in results:
        print(r.line(), file=out, flush=True)
    return EXIT_OK if all(r.passed for r in results) else EXIT_CONTRACT


_COMMANDS = {
    "check": _cmd_check,
    "decompose": _cmd_decompose,
    "tree": _cmd_tree,
    "extend": _cmd_extend,
    "search-min": _cmd_search,
    "bound": _cmd_bound,
    "selftest": _cmd_selftest,
}


def run_command(argv: list[str], out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = _parser().parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT
    except StructureFileError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AxiomViolation as exc:
        print(f"axiom violation: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MalformedStructure as exc:
        print(f"malformed structure: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
