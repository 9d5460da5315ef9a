"""Rational functions in t over Q, i.e. elements of K = Q(t)."""

from fractions import Fraction

from .poly import Poly
from .sqfree import poly_gcd, poly_sqrt_exact


class RatFunc:
    """Reduced fraction ``num/den`` with ``den`` monic and coprime to ``num``."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _to_poly(num)
        den = Poly.const(1) if den is None else _to_poly(den)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            num, den = Poly(), Poly.const(1)
        elif not den.is_constant:
            g = poly_gcd(num, den)
            if not g.is_constant:
                num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lc
        if lc != 1:
            num, den = num.scale(1 / lc), den.scale(1 / lc)
        self.num = num
        self.den = den

    @property
    def is_poly(self):
        return self.den.is_constant

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def is_constant(self):
        return self.num.is_constant and self.den.is_constant

    def height(self):
        return max(self.num.height(), self.den.height())

    def as_poly(self):
        if not self.is_poly:
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction, Poly)):
            return RatFunc(other)
        return NotImplemented

    def __add__(self, other):
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, k):
        if not isinstance(k, int):
            raise ValueError("integer exponent required")
        if k < 0:
            return RatFunc(1) / self ** (-k)
        return RatFunc(self.num ** k, self.den ** k)

    def __eq__(self, other):
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, x):
        if isinstance(x, (int, Fraction)):
            return self.num(x) / self.den(x)
        return RatFunc._coerce(self.num(x)) / RatFunc._coerce(self.den(x))

    def __str__(self):
        from .parse import render_ratfunc
        return render_ratfunc(self)

    def __repr__(self):
        return f"RatFunc({str(self)!r})"


def _to_poly(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    raise TypeError(f"cannot build a polynomial from {type(x).__name__}")


def compose(p: Poly, f: RatFunc) -> RatFunc:
    """p(f) for a polynomial p, computed with a single common denominator."""
    if p.is_zero:
        return RatFunc(0)
    n = p.degree
    a, b = f.num, f.den
    num = Poly()
    apow = Poly.const(1)
    bpows = [Poly.const(1)]
    for _ in range(n):
        bpows.append(bpows[-1] * b)
    for i, c in enumerate(p.coeffs):
        if c:
            num = num + apow * bpows[n - i] * c
        apow = apow * a
    return RatFunc(num, bpows[n])


def height(a) -> int:
    """Height of a rational function: max degree of numerator and denominator."""
    if isinstance(a, (int, Fraction)):
        return 0
    return a.height()


def ratfunc_sqrt(a: RatFunc):
    """Square root in Q(t) or None.  sqrt(num)/sqrt(den) on the reduced form."""
    if a.is_zero:
        return RatFunc(0)
    rd = poly_sqrt_exact(a.den)
    if rd is None:
        return None
    rn = poly_sqrt_exact(a.num)
    if rn is None:
        return None
    return RatFunc(rn, rd)


def is_square_ratfunc(a: RatFunc) -> bool:
    """True iff a is a nonzero square in Q(t)."""
    if a.is_zero:
        raise ValueError("square test of zero")
    return poly_sqrt_exact(a.num * a.den) is not None
