"""Folding polygons to convex polyhedra: gluings, enumeration, unfolding."""

from . import config
from .errors import FoldtopeError
from .geometry import BoundaryPoint, Polygon, build_polygon, rectangle, regular_ngon
from .gluing import (Gluing, GluingType, combinatorial_type, gluing_tree,
                     perimeter_halving, validate_aleksandrov)

__all__ = ["config", "FoldtopeError", "BoundaryPoint", "Polygon", "build_polygon",
           "rectangle", "regular_ngon", "Gluing", "GluingType", "combinatorial_type",
           "gluing_tree", "perimeter_halving", "validate_aleksandrov"]
