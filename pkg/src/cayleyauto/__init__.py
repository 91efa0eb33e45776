"""Exact computations on automatic sequences produced by symmetric automata.

The pipeline runs from an automaton to its kernel graph ``Gamma(a)``, the
monoid ``G(a)``, the sequence classes (global relations, homogeneous,
self-similar), the rational fraction ``L(a, x)`` and the asymptotic letter
frequencies along ``n = p^k``.
"""

from __future__ import annotations

from .classify import (
    Classification,
    CosetStructure,
    classify,
    coset_structure,
    dagger_check,
    derived_labeling,
    invariance_subgroup,
    reproduces,
    similarity_bijection,
)
from .core import (
    AffineCode,
    Automaton,
    affine_to_word,
    digits_lsb,
    eval_from,
    evaluate,
    numeration_stats,
    parse_automaton,
    relation_type,
    serialize_automaton,
    subsequence_state,
    word_to_affine,
)
from .errors import AutomatonError
from .frequency import (
    FrequencyReport,
    RootInfo,
    analyze_denominator,
    empirical_counts,
    frequency_report,
)
from .groups import (
    PermGroup,
    Permutation,
    cayley_automaton,
    corpus,
    schreier_automaton,
)
from .kernel import (
    KernelGraph,
    build_kernel_graph,
    has_global_relations_all_types,
    kernel_partition,
    minimal_relations,
    monoid_closure,
    rel_equal,
    relation_language,
)
from .poly import MPoly, Poly
from .rational import (
    RationalFunction,
    L_multivariate,
    L_univariate,
    series_counts,
    system_data,
)

generate_group = PermGroup

__version__ = "0.1.0"
