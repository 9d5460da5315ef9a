"""Univariate polynomials in t over Q."""

from fractions import Fraction
from math import gcd

from . import _zpoly as Z


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected a rational coefficient, got {type(x).__name__}")


class Poly:
    """Immutable dense polynomial in ``t`` with rational coefficients.

    Stored as an integer numerator list and one positive common denominator,
    reduced so that gcd(content(numerators), denominator) == 1.  The zero
    polynomial has ``degree`` None; use :attr:`is_zero` rather than comparing
    degrees.
    """

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, coeffs=()):
        coeffs = [_as_fraction(c) for c in coeffs]
        den = Z.lcm_all(c.denominator for c in coeffs)
        self._set([c.numerator * (den // c.denominator) for c in coeffs], den)

    def _set(self, num, den):
        num = Z.strip(list(num))
        if den < 0:
            num, den = [-x for x in num], -den
        if not num:
            den = 1
        else:
            g = gcd(Z.content(num), den)
            if g != 1:
                num = [x // g for x in num]
                den //= g
        self._num = tuple(num)
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, num, den=1):
        p = cls.__new__(cls)
        p._set(num, den)
        return p

    @classmethod
    def t(cls):
        return cls._raw([0, 1])

    @classmethod
    def const(cls, c):
        c = _as_fraction(c)
        return cls._raw([c.numerator], c.denominator)

    @classmethod
    def monomial(cls, k, coeff=1):
        c = _as_fraction(coeff)
        return cls._raw([0] * k + [c.numerator], c.denominator)

    # -- inspection -------------------------------------------------------

    @property
    def coeffs(self):
        d = self._den
        return tuple(Fraction(x, d) for x in self._num)

    @property
    def degree(self):
        return len(self._num) - 1 if self._num else None

    @property
    def is_zero(self):
        return not self._num

    @property
    def is_constant(self):
        return len(self._num) <= 1

    @property
    def lc(self):
        return Fraction(self._num[-1], self._den) if self._num else Fraction(0)

    def coeff(self, k):
        if 0 <= k < len(self._num):
            return Fraction(self._num[k], self._den)
        return Fraction(0)

    def integer_form(self):
        """Return ``(nums, den)`` with self == sum(nums[i] t^i) / den."""
        return list(self._num), self._den

    def height(self):
        return len(self._num) - 1 if self._num else 0

    def __bool__(self):
        return bool(self._num)

    def __len__(self):
        return len(self._num)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, da = self._num, self._den
        b, db = other._num, other._den
        if da == db:
            return Poly._raw(Z.add(list(a), list(b)), da)
        g = gcd(da, db)
        return Poly._raw(Z.add(Z.scale(a, db // g), Z.scale(b, da // g)), da // g * db)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-x for x in self._num], self._den)

    def __sub__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other is self:
            return Poly._raw(Z.mul(self._num, self._num), self._den * self._den)
        return Poly._raw(Z.mul(self._num, other._num), self._den * other._den)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __divmod__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if len(self._num) < len(other._num):
            return Poly(), self
        q, r, e = Z.pdivmod(list(self._num), list(other._num))
        lg_e = other._num[-1] ** e
        # self = (nums/da); other = (g/db): lg^e*nums = q*g + r
        quo = Poly._raw(Z.scale(q, other._den), self._den * lg_e)
        rem = Poly._raw(r, self._den * lg_e)
        return quo, rem

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("division is not exact")
        return q

    def derivative(self):
        return Poly._raw(Z.derivative(self._num), self._den)

    def monic(self):
        if not self._num:
            return self
        lc = self._num[-1]
        return Poly._raw(list(self._num), lc) if lc > 0 else Poly._raw([-x for x in self._num], -lc)

    def scale(self, k):
        k = _as_fraction(k)
        return Poly._raw(Z.scale(self._num, k.numerator), self._den * k.denominator)

    def primitive_int(self):
        """Primitive integer polynomial with positive leading coefficient."""
        return Z.primitive(list(self._num))

    def __call__(self, x):
        """Horner evaluation at a rational, a Poly (composition) or a RatFunc."""
        if isinstance(x, (int, Fraction)):
            return self._eval_fraction(_as_fraction(x))
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _eval_fraction(self, x):
        # homogenised Horner keeps everything in integers
        p, q = x.numerator, x.denominator
        acc = 0
        qpow = 1
        for c in reversed(self._num):
            acc = acc * p + c * qpow
            qpow *= q
        n = len(self._num) - 1
        return Fraction(acc, self._den * q ** n) if self._num else Fraction(0)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        other = Poly._coerce(other) if not isinstance(other, Poly) else other
        if other is NotImplemented:
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._num, self._den))
        return self._hash

    def __str__(self):
        from .parse import render_poly
        return render_poly(self)

    def __repr__(self):
        return f"Poly({str(self)!r})"


T = Poly.t()
ZERO = Poly()
ONE = Poly.const(1)
