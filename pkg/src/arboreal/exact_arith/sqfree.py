"""Gcd, square-free decomposition and exact square roots in Q[t]."""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import _zpoly as Z
from .poly import Poly

# small integer points for the evaluation screen in poly_sqrt_exact
_SCREEN_POINTS = (2, 3, 5, 7, -2, -3, 11, 13)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q; ``poly_gcd(0, 0)`` is the zero polynomial."""
    if a.is_zero and b.is_zero:
        return Poly()
    g = Z.gcd_prs(a.primitive_int(), b.primitive_int())
    return Poly._raw(g, g[-1])


@dataclass(frozen=True)
class SquareFreeDecomposition:
    unit: Fraction
    factors: tuple  # of (monic square-free Poly, multiplicity)

    def expand(self) -> Poly:
        out = Poly.const(self.unit)
        for f, m in self.factors:
            out = out * f ** m
        return out


def squarefree_decompose(g: Poly) -> SquareFreeDecomposition:
    """Yun's algorithm over Q.

    The factors are monic, square-free and pairwise coprime, and
    ``unit * prod(f**m)`` reconstructs ``g`` exactly.
    """
    if g.is_zero:
        raise ValueError("square-free decomposition of the zero polynomial")
    unit = g.lc
    f = g.monic()
    if f.is_constant:
        return SquareFreeDecomposition(unit, ())
    fp = f.derivative()
    a0 = poly_gcd(f, fp)
    b = f.exact_div(a0)
    c = fp.exact_div(a0)
    d = c - b.derivative()
    factors = []
    i = 1
    while not b.is_constant:
        a = poly_gcd(b, d)
        if not a.is_constant:
            factors.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return SquareFreeDecomposition(unit, tuple(factors))


def squarefree_part_split(g: Poly):
    """Split ``g = u * d * y**2`` with d, y monic and d square-free.

    Returns ``(d, y, u)``.
    """
    sqf = squarefree_decompose(g)
    d = Poly.const(1)
    y = Poly.const(1)
    for f, m in sqf.factors:
        if m % 2:
            d = d * f
        if m >= 2:
            y = y * f ** (m // 2)
    return d, y, sqf.unit


def rational_sqrt(q):
    """Square root of a rational if it is a rational square, else None."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def _monic_sqrt(f: Poly):
    # f monic of even degree 2m; solve r^2 = f top-down with r monic of degree m
    c = f.coeffs
    n = len(c) - 1
    m = n // 2
    r = [Fraction(0)] * (m + 1)
    r[m] = Fraction(1)
    for k in range(m - 1, -1, -1):
        # coefficient of t^(m+k) in r^2: 2 r_m r_k + sum_{i+j=m+k, k<i,j<m} r_i r_j
        s = sum(r[i] * r[m + k - i] for i in range(k + 1, m))
        r[k] = (c[m + k] - s) / 2
    root = Poly(r)
    return root if root * root == f else None


def poly_sqrt_exact(g: Poly):
    """Exact square root in Q[t], or None when g is not a square.

    The root has a positive leading coefficient.  Cheap necessary
    conditions are screened first: even degree, square leading
    coefficient, and rational-square values at a few integer points.
    """
    if g.is_zero:
        return Poly()
    deg = g.degree
    if deg % 2:
        return None
    s = rational_sqrt(g.lc)
    if s is None:
        return None
    for x in _SCREEN_POINTS:
        if rational_sqrt(g(x)) is None:
            return None
    root = _monic_sqrt(g.monic())
    if root is None:
        return None
    return root.scale(s)


def is_square_poly(g: Poly) -> bool:
    return poly_sqrt_exact(g) is not None
