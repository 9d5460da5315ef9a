"""Polynomials in x with coefficients in Q[t]; resultants and discriminants.

Sign conventions (fixed here, used everywhere):

* ``Res_x(A, B) = lc(A)**deg(B) * prod B(alpha)`` over the roots alpha of A,
  so ``Res_x(x - p, x - q) = p - q`` and ``Res_x(x**2 - t, 2x) = -4t``.
* ``disc_x(A) = (-1)**(d(d-1)/2) * Res_x(A, A') / lc(A)`` with d = deg_x A.
  For a monic quadratic ``(x - g)**2 + c`` this gives ``-4c``.
"""

from .poly import Poly


class BiPoly:
    """Immutable polynomial in ``x`` whose coefficients are :class:`Poly`."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Poly) else Poly.const(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls):
        return cls([Poly(), Poly.const(1)])

    @classmethod
    def const(cls, p):
        return cls([p])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Poly()

    @staticmethod
    def _coerce(other):
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, Poly):
            return BiPoly([other])
        try:
            return BiPoly([Poly.const(other)])
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = BiPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        zero = Poly()
        return BiPoly([(a[i] if i < len(a) else zero) + (b[i] if i < len(b) else zero)
                       for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return BiPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = BiPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = BiPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return BiPoly()
        out = [Poly()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = BiPoly([Poly.const(1)])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = BiPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def derivative(self):
        return BiPoly([c * i for i, c in enumerate(self.coeffs)][1:])

    def shift_x(self, k):
        return BiPoly([Poly()] * k + list(self.coeffs))

    def scale(self, p):
        return BiPoly([c * p for c in self.coeffs])

    def at_t(self, value):
        """Specialise t to a rational, giving a univariate Poly in x."""
        return Poly([c(value) for c in self.coeffs])

    def __call__(self, x):
        acc = Poly() if isinstance(x, Poly) else BiPoly()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        terms = ", ".join(str(c) for c in self.coeffs)
        return f"BiPoly([{terms}])"


def _prem(a: BiPoly, b: BiPoly) -> BiPoly:
    # lc(b)**(deg a - deg b + 1) * a = q*b + r, entirely in Q[t][x]
    db = b.degree
    lb = b.lc
    r = a
    e = a.degree - db + 1
    while not r.is_zero and r.degree >= db:
        s = r.degree - db
        r = r.scale(lb) - b.scale(r.lc).shift_x(s)
        e -= 1
    if e > 0 and not r.is_zero:
        r = r.scale(lb ** e)
    return r


def resultant_x(a: BiPoly, b: BiPoly) -> Poly:
    """Resultant with respect to x via the subresultant PRS.

    Every division in the loop is exact in Q[t].
    """
    if a.is_zero or b.is_zero:
        raise ValueError("resultant of a zero polynomial")
    sign = 1
    if a.degree < b.degree:
        a, b = b, a
        if a.degree % 2 and b.degree % 2:
            sign = -1
    if b.degree == 0:
        return b.lc ** a.degree * sign
    g = Poly.const(1)
    h = Poly.const(1)
    while True:
        delta = a.degree - b.degree
        if a.degree % 2 and b.degree % 2:
            sign = -sign
        r = _prem(a, b)
        a = b
        divisor = g * h ** delta
        b = BiPoly([c.exact_div(divisor) for c in r.coeffs])
        g = a.lc
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = (g ** delta).exact_div(h ** (delta - 1))
        if b.is_zero:
            return Poly()
        if b.degree == 0:
            da = a.degree
            res = b.lc ** da
            if da > 1:
                res = res.exact_div(h ** (da - 1))
            elif da == 0:
                res = res * h
            return res * sign


def disc_x(a: BiPoly) -> Poly:
    """Discriminant in x with the sign convention documented above."""
    if a.is_zero or a.degree < 1:
        raise ValueError("discriminant needs degree >= 1 in x")
    d = a.degree
    res = resultant_x(a, a.derivative())
    out = res.exact_div(a.lc)
    return -out if (d * (d - 1) // 2) % 2 else out


def disc_t_shifted(c: Poly) -> Poly:
    """p(s) = disc_t(c(t) + s), returned as a polynomial in s.

    Internally the roles swap: c(t) + s is a polynomial in t whose
    coefficients lie in Q[s].
    """
    if c.is_constant:
        raise ValueError("disc_t(c + s) needs a non-constant c")
    s = Poly.t()
    coeffs = [Poly.const(k) for k in c.coeffs]
    coeffs[0] = coeffs[0] + s
    return disc_x(BiPoly(coeffs))
