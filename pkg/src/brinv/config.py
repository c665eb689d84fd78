"""Tunable limits.  All enumeration is desk-scale and guarded by explicit budgets."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    depth_cap: int = 32          # max address length per colour
    pattern_budget: int = 500_000   # max patterns visited by enumerate_patterns
    interval_budget: int = 200_000  # max states in interval enumerations
    star_budget: int = 50_000       # max states in exhaustive star-witness search
    matrix_budget: int = 2_000_000  # max entries of a boundary matrix


DEFAULT_LIMITS = Limits()
