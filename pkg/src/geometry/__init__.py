"""Closed-form cohomology on the P^1-bundle T and the double-cover arithmetic."""

from src.geometry.cohomology import (
    CohomVector,
    cohom_t,
    euler_char_t,
    euler_s_h_twist,
    p2_cohomology,
)
from src.geometry.cover import CoverSolutionSet, cover_solutions

__all__ = [
    "CohomVector",
    "CoverSolutionSet",
    "cohom_t",
    "cover_solutions",
    "euler_char_t",
    "euler_s_h_twist",
    "p2_cohomology",
]
