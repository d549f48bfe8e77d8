"""Correspondence (DP) colouring on plane graphs without 4- to 8-cycles."""

from .correspondence import CorrespondenceAssignment, PartialInjection, compose, is_consistent_global
from .planegraph import EmbeddingError, PlaneGraph
from .solver import InvalidInstance, TargetInstance, brute_force, solve
from .transforms import Relabeling, StraightenError, from_lists, straighten, to_lists

__all__ = [
    "CorrespondenceAssignment",
    "EmbeddingError",
    "InvalidInstance",
    "PartialInjection",
    "PlaneGraph",
    "Relabeling",
    "StraightenError",
    "TargetInstance",
    "brute_force",
    "compose",
    "from_lists",
    "is_consistent_global",
    "solve",
    "straighten",
    "to_lists",
]
__version__ = "0.1.0"
