"""Cayley balls for free abelian groups and BS(1,2), exact arithmetic,
and verifiers for the geodesic structure of BS(1,2)."""

from .bs12 import (
    BS12Element,
    IDENTITY,
    NormalForm,
    bs12_multiply,
    bs12_inverse,
    bs12_normal_form,
    evaluate_word,
    parse_word,
)
from .cayley import CayleyBall, GroupSpec, cayley_ball, group_distance

__all__ = [
    "BS12Element",
    "CayleyBall",
    "GroupSpec",
    "IDENTITY",
    "NormalForm",
    "bs12_inverse",
    "bs12_multiply",
    "bs12_normal_form",
    "cayley_ball",
    "evaluate_word",
    "group_distance",
    "parse_word",
]
