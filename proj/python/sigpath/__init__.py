"""Path signatures, hyperbolic development and tree-like reduction."""

from ._sigpath import (
    ConsistencyError,
    DomainError,
    NumericalError,
    ParseError,
    certify_word,
    chord_distance,
    free_reduce,
    is_tree_like,
    length_estimate,
    level_norms,
    min_nonzero_level,
    reduce_path,
    signature,
    signature_coefficient,
    tree_distance,
)

__all__ = [
    "ConsistencyError",
    "DomainError",
    "NumericalError",
    "ParseError",
    "certify_word",
    "chord_distance",
    "free_reduce",
    "is_tree_like",
    "length_estimate",
    "level_norms",
    "min_nonzero_level",
    "reduce_path",
    "signature",
    "signature_coefficient",
    "tree_distance",
]
