"""Shortcut certificates, disk diagrams, wall cycles and exact BS(1,2)
arithmetic for finite graphs and Cayley balls."""

__version__ = "0.1.0"

from .cycles import CycleInGraph
from .graphs import Graph, subdivide
from .metrics import DistanceOracle, distances

__all__ = [
    "CycleInGraph",
    "DistanceOracle",
    "Graph",
    "distances",
    "subdivide",
    "__version__",
]
