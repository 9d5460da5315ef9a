"""Exact arithmetic over Q, Q[t], Q(t) and Q[t][x]."""

from fractions import Fraction as Rat

from .bipoly import BiPoly, disc_t_shifted, disc_x, resultant_x
from .parse import ParseError, parse_poly, parse_ratfunc, render
from .poly import ONE, ZERO, Poly, T
from .ratfunc import RatFunc, compose, height, is_square_ratfunc, ratfunc_sqrt
from .sqfree import (
    SquareFreeDecomposition,
    is_square_poly,
    poly_gcd,
    poly_sqrt_exact,
    rational_sqrt,
    squarefree_decompose,
    squarefree_part_split,
)

__all__ = [
    "Rat", "Poly", "T", "ZERO", "ONE", "RatFunc", "BiPoly",
    "SquareFreeDecomposition", "poly_gcd", "squarefree_decompose",
    "squarefree_part_split", "poly_sqrt_exact", "is_square_poly", "rational_sqrt",
    "is_square_ratfunc", "ratfunc_sqrt", "compose", "height",
    "resultant_x", "disc_x", "disc_t_shifted",
    "parse_poly", "parse_ratfunc", "render", "ParseError",
]
