"""Exact computations for generalised Kanenobu knots and their branched double covers."""

from .diagrams import BraidWord, KanenobuParams, NotAKnot, beta_n
from .intmatrix import AbelianStructure, IntMatrix, knot_determinant, smith_normal_form
from .presentations import EmptyFamily, FreeWord, GroupPresentation, enumerate_family

__all__ = [
    "AbelianStructure",
    "BraidWord",
    "EmptyFamily",
    "FreeWord",
    "GroupPresentation",
    "IntMatrix",
    "KanenobuParams",
    "NotAKnot",
    "beta_n",
    "enumerate_family",
    "knot_determinant",
    "smith_normal_form",
]
