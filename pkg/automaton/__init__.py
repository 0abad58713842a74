from . import graph
from .graph import (
    FoldMerge,
    FoldTrace,
    InverseAutomaton,
    RawGraph,
    accepted_words,
    dyck_closure,
    fold,
    isomorphic,
    merge_witness,
    path_to,
    to_dot,
)
from .subgroup import accepts, flower, rank, stallings, subgroup_member, trim_core
from .product import IntersectionResult, intersect_empty
from .fileformat import (
    AutomatonFormatError,
    format_automaton,
    load_automaton,
    load_inverse_automaton,
    parse_automaton,
    write_automaton,
)
