"""Executable toolkit for ordered-sequence towers, sequence embedding, and
barrier arrays, with window-bounded verification of their interplay."""

from .base_orders import (
    Cmp,
    BaseElem,
    Embedding,
    Finite,
    OMEGA,
    Omega,
    OmegaPlus,
    compare_base,
    embed_base,
    embed_inclusion,
    embed_into_tail,
    format_elem,
    format_spec,
    has_omega_form,
    normalize_spec,
    one_plus,
    parse_elem,
    parse_spec,
    zero_elem,
)
from .barriers import (
    Node,
    enumerate_window,
    format_node,
    format_pair,
    iter_triangle_pairs,
    parse_node,
    split,
    triangle,
    union,
)
from .errors import WqoError
from .quasiorders import (
    Base,
    FiniteQO,
    Product,
    ProductElem,
    QuasiOrder,
    SeqOver,
    TermOrder,
    Verdict,
    format_array_table,
    goodness_on_window,
    higman_leq,
    parse_array_table,
    parse_quasiorder,
    qo_leq,
)
from .terms import (
    Term,
    TermViolation,
    bar_entry,
    c_value,
    format_term,
    is_zero_term,
    j_index,
    lex_compare,
    lift_embedding,
    one_plus_term,
    parse_term,
    validate_term,
    zero_term,
)
from .transform import (
    DescendingSequence,
    LevelTable,
    LevelVerdict,
    WitnessReport,
    build_level0,
    build_levels,
    build_next_level,
    canonical_descent,
    descent_step,
    format_report_json,
    format_report_structured,
    format_report_text,
    format_sequence_file,
    parse_sequence_file,
    run_pipeline,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
