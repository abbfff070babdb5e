"""Khovanov-type homology and state-sum polynomials of OMS-divides over GF(2)."""

from .complex import GradedComplex, build_complex, check_d_squared
from .divide import Crossing, Divide, DivideError, PartialDivide, WallItem, profile, validate
from .homology import HomologyTable, divide_homology, graded_euler, homology_table
from .laurent import HalfLaurent, NotDivisible
from .moves import MoveSpec, NotApplicable, apply_move, parse_move, random_divide
from .notation import emit, loads, parse
from .polynomial import check_euler_relation, w_enhanced, w_statesum

__all__ = [
    "Crossing", "Divide", "DivideError", "GradedComplex", "HalfLaurent", "HomologyTable",
    "MoveSpec", "NotApplicable", "NotDivisible", "PartialDivide", "WallItem", "apply_move",
    "build_complex", "check_d_squared", "check_euler_relation", "divide_homology", "emit",
    "graded_euler", "homology_table", "loads", "parse", "parse_move", "profile",
    "random_divide", "validate", "w_enhanced", "w_statesum",
]
