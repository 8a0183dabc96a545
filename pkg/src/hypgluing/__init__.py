"""Hyperbolic structures on ideal triangulations from gluing equations."""

from .triangulation import Triangulation, parse_triangulation, edge_classes, cusp_classes
from .shapes import INF, shape_triple, lobachevsky, tet_volume
from .equations import build_system
from .solver import SolverConfig, solve
from .developing import develop
from .holonomy import MoebiusMap, face_pairing, triple_to_normal
from .wirtinger import parse_word, wirtinger_presentation

__version__ = "0.1.0"

__all__ = [
    "Triangulation", "parse_triangulation", "edge_classes", "cusp_classes",
    "INF", "shape_triple", "lobachevsky", "tet_volume", "build_system",
    "SolverConfig", "solve", "develop", "MoebiusMap", "face_pairing",
    "triple_to_normal", "parse_word", "wirtinger_presentation",
]
