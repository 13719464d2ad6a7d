"""Intervals, substitution decomposition and simple extensions of finite relational structures."""

from .decomposition import (
    Decomposition,
    DegenerateSplit,
    decomposition_tree,
    degenerate_split,
    substitution_decompose,
)
from .extensions import (
    ConstructionError,
    ExtensionResult,
    bound,
    extend,
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
from .intervals import (
    IntervalReport,
    interval_closure,
    is_interval,
    is_simple,
    maximal_proper_intervals,
)
from .io import StructureFileError, format_report, parse_report, parse_structure, serialize_structure
from .oracle import (
    SearchBudget,
    SearchSpaceTooLarge,
    enumerate_structures,
    exhaustive_is_simple,
    find_one_point_extension,
    minimal_extension_size,
)
from .structure import (
    DIGRAPH,
    GRAPH,
    LINEAR_ORDER,
    ORIENTED,
    PERMUTATION,
    POSET,
    TOURNAMENT,
    AxiomViolation,
    MalformedStructure,
    Permutation,
    RelationalStructure,
    RelationSignature,
    StructureClass,
    check,
    hypergraph,
    inflate,
    kary,
    kary_irreflexive,
    perm_to_structure,
    restrict,
    structure_to_perm,
    validate,
)

__version__ = "0.1.0"
