"""Exact ellipsoidal designs and Prouhet-Tarry-Escott solutions."""

from .arith import QuadExt, parse_rat, rat
from .ellipse import DesignSet, EllipsePoint, embed, is_design, norm_form, power_sum, shell_points
from .pte import PteSolution, verify_pte

__all__ = [
    "QuadExt",
    "parse_rat",
    "rat",
    "DesignSet",
    "EllipsePoint",
    "embed",
    "is_design",
    "norm_form",
    "power_sum",
    "shell_points",
    "PteSolution",
    "verify_pte",
]

__version__ = "0.1.0"
