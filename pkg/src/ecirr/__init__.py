"""Irreducible polynomial sequences from elliptic-curve endomorphisms over finite fields."""

from .curve import Curve, count_points, verify_endomorphism
from .errors import EcirrError
from .ff import FieldCtx, FieldElem
from .graph import build_graph, tree_profiles
from .poly import Poly, factor, is_irreducible
from .quadorder import QuadInt, QuadOrder, nu_alpha
from .ratmap import INFINITY, RationalMap, r_transform
from .sequence import SequenceParams, run

__version__ = "0.1.0"

__all__ = [
    "Curve", "count_points", "verify_endomorphism", "EcirrError", "FieldCtx", "FieldElem",
    "build_graph", "tree_profiles", "Poly", "factor", "is_irreducible", "QuadInt", "QuadOrder",
    "nu_alpha", "INFINITY", "RationalMap", "r_transform", "SequenceParams", "run",
]
