"""Dyadic-pattern Cantor algebras: patterns, contractions below a base pattern,
pattern-pair groups, coloured glueing graphs, pushing maps and desk-scale homology."""

from .config import DEFAULT_LIMITS, Limits
from .boxes import (
    Box,
    Pattern,
    box_depth,
    box_key,
    contract,
    enumerate_patterns,
    expand,
    is_hierarchical,
    leq,
    lub,
    root_box,
    root_pattern,
)

__all__ = [
    "Box",
    "Pattern",
    "DEFAULT_LIMITS",
    "Limits",
    "box_depth",
    "box_key",
    "contract",
    "enumerate_patterns",
    "expand",
    "is_hierarchical",
    "leq",
    "lub",
    "root_box",
    "root_pattern",
]
