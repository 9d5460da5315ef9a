"""Quadratic maps (x - gamma)^2 + c over Q(t): orbits, heights, classification."""

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exact_arith import BiPoly, Poly, RatFunc, compose, parse_poly, ratfunc_sqrt, render


@dataclass(frozen=True)
class QuadMap:
    """phi(x) = (x - gamma)^2 + c with gamma, c in Q[t]."""

    gamma: Poly
    c: Poly

    @classmethod
    def parse(cls, gamma: str, c: str) -> "QuadMap":
        return cls(parse_poly(gamma), parse_poly(c))

    @classmethod
    def x2_plus(cls, f: Poly) -> "QuadMap":
        return cls(Poly(), f)

    @property
    def b(self) -> Poly:
        """gamma - c; the map is isotrivial exactly when this is constant."""
        return self.gamma - self.c

    @property
    def h_gamma(self) -> int:
        return self.gamma.height()

    @property
    def h_c(self) -> int:
        return self.c.height()

    @property
    def h_b(self) -> int:
        return self.b.height()

    @property
    def height(self) -> int:
        return max(self.h_gamma, self.h_c)

    @property
    def is_isotrivial(self) -> bool:
        return self.b.is_constant

    def __call__(self, x):
        y = x - self.gamma
        return y * y + self.c

    def as_bipoly(self) -> BiPoly:
        y = BiPoly.x() - self.gamma
        return y * y + self.c

    def over_k(self) -> "QuadMapOverK":
        return QuadMapOverK(RatFunc(self.gamma), RatFunc(self.c))

    def __str__(self):
        return f"(x - ({render(self.gamma)}))^2 + ({render(self.c)})"


@dataclass(frozen=True)
class QuadMapOverK:
    """phi(x) = (x - gamma)^2 + c with gamma, c in Q(t)."""

    gamma: RatFunc
    c: RatFunc

    @property
    def is_polynomial(self) -> bool:
        return self.gamma.is_poly and self.c.is_poly

    def to_polynomial_map(self) -> QuadMap:
        return QuadMap(self.gamma.as_poly(), self.c.as_poly())

    def __call__(self, x):
        y = x - self.gamma
        return y * y + self.c

    def __str__(self):
        return f"(x - ({render(self.gamma)}))^2 + ({render(self.c)})"


def iterate_at(phi, x0, n: int):
    """phi^n(x0); ``n = 0`` returns ``x0`` unchanged."""
    if n < 0:
        raise ValueError("iteration count must be non-negative")
    v = x0
    for _ in range(n):
        v = phi(v)
    return v


@lru_cache(maxsize=128)
def _orbit(phi: QuadMap, start: Poly, n: int) -> tuple:
    if n == 0:
        return ()
    prev = _orbit(phi, start, n - 1)
    last = prev[-1] if prev else start
    return prev + (phi(last),)


def critical_orbit(phi: QuadMap, n: int) -> list:
    """[phi(gamma), ..., phi^n(gamma)]."""
    if n < 1:
        raise ValueError("orbit length must be at least 1")
    return list(_orbit(phi, phi.gamma, n))


def zero_orbit(phi: QuadMap, n: int) -> list:
    """[phi(0), ..., phi^n(0)]."""
    if n < 1:
        raise ValueError("orbit length must be at least 1")
    return list(_orbit(phi, Poly(), n))


# -- heights ------------------------------------------------------------------


class HeightKind(enum.Enum):
    EXACT = "exact"
    UPPER_BOUND = "upper_bound"


@dataclass(frozen=True)
class HeightPrediction:
    kind: HeightKind
    value: int

    def agrees_with(self, actual: int) -> bool:
        if self.kind is HeightKind.EXACT:
            return actual == self.value
        return actual <= self.value


class HeightCase(enum.Enum):
    UNEQUAL_HEIGHTS = "unequal_heights"
    EQUAL_HEIGHTS_NON_ISOTRIVIAL = "equal_heights_non_isotrivial"
    ISOTRIVIAL = "isotrivial"


def height_case(phi: QuadMap) -> HeightCase:
    if phi.is_isotrivial:
        return HeightCase.ISOTRIVIAL
    if phi.h_gamma != phi.h_c:
        return HeightCase.UNEQUAL_HEIGHTS
    return HeightCase.EQUAL_HEIGHTS_NON_ISOTRIVIAL


def predict_height_critical(phi: QuadMap, m: int) -> HeightPrediction:
    """Predicted h(phi^m(gamma)).

    Unequal heights: exact 2^(m-1) h(phi) for m >= 2.  Equal heights with
    b = gamma - c non-constant: phi^m(gamma) = c + w_m with h(w_m) =
    2^(m-1) h(b) for m >= 2 (w_1 = 0), so the height is the max of the two
    unless they tie.  Isotrivial: the orbit is c plus constants.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    case = height_case(phi)
    if case is HeightCase.ISOTRIVIAL:
        return HeightPrediction(HeightKind.EXACT, phi.h_gamma)
    if case is HeightCase.UNEQUAL_HEIGHTS:
        if m == 1:
            return HeightPrediction(HeightKind.UPPER_BOUND, phi.height)
        return HeightPrediction(HeightKind.EXACT, 2 ** (m - 1) * phi.height)
    grown = 2 ** (m - 1) * phi.h_b
    if grown != phi.h_c:
        return HeightPrediction(HeightKind.EXACT, max(grown, phi.h_c))
    return HeightPrediction(HeightKind.UPPER_BOUND, phi.h_c)


def predict_height_zero(phi: QuadMap, m: int) -> HeightPrediction:
    """Predicted h(phi^m(0)): exact 2^m h(gamma) when h(gamma) = h(c) > 0."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if phi.h_gamma == phi.h_c and phi.h_gamma > 0:
        return HeightPrediction(HeightKind.EXACT, 2 ** m * phi.h_gamma)
    return HeightPrediction(HeightKind.UPPER_BOUND, 2 ** m * phi.height)


@dataclass(frozen=True)
class Rho:
    """log2(h(gamma)/h(gamma - c)) + 1, kept as the integer pair it comes from."""

    h_gamma: int
    h_b: int

    @property
    def value(self) -> float:
        # display only; decisions go through exceeded_by
        return math.log2(self.h_gamma / self.h_b) + 1

    def exceeded_by(self, m: int) -> bool:
        """m > rho, decided as 2^(m-1) h_b > h_gamma."""
        return 2 ** (m - 1) * self.h_b > self.h_gamma

    def equals(self, m: int) -> bool:
        return 2 ** (m - 1) * self.h_b == self.h_gamma


def rho(phi: QuadMap) -> Rho:
    if phi.h_gamma != phi.h_c:
        raise ValueError("rho is defined only when h(gamma) = h(c)")
    if phi.is_isotrivial:
        raise ValueError("rho is undefined for isotrivial maps")
    return Rho(phi.h_gamma, phi.h_b)


# -- classification -----------------------------------------------------------


class PcfKind(enum.Enum):
    FINITE = "finite"
    INFINITE = "infinite"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class PcfStatus:
    kind: PcfKind
    witness: str
    checked_up_to: int = 0
    preperiod: int = None
    period: int = None
    escape_level: int = None


@dataclass(frozen=True)
class MapClass:
    isotrivial: bool
    height_case: HeightCase
    pcf: PcfStatus
    # for isotrivial maps: phi^n(gamma) = c + orbit_constants[n-1]
    orbit_constants: tuple = field(default=())

    @property
    def post_critically_infinite(self) -> bool:
        return self.pcf.kind is PcfKind.INFINITE


def escapes(s: Fraction, a: Fraction) -> bool:
    """|s| > (1 + sqrt(1 + 4|a|))/2, the escape radius of s -> s^2 + a, decided exactly."""
    u = 2 * abs(s) - 1
    return u > 0 and u * u > 1 + 4 * abs(a)


def constant_orbit(phi: QuadMap, n: int) -> list:
    """Constants c_1..c_n with phi^k(gamma) = c + c_k for an isotrivial map."""
    if not phi.is_isotrivial:
        raise ValueError("constant orbit requires an isotrivial map")
    b = phi.b.coeff(0)
    out = [Fraction(0)]
    while len(out) < n:
        out.append((out[-1] - b) ** 2)
    return out[:n]


def _isotrivial_pcf(phi: QuadMap, bound: int):
    # phi^n(gamma) = c + c_n with c_{n+1} = (c_n - b)^2; s_n = c_n - b obeys s -> s^2 + a, a = -b
    b = phi.b.coeff(0)
    a = -b
    cs = []
    seen = {}
    c_n = Fraction(0)
    for n in range(1, bound + 1):
        cs.append(c_n)
        if c_n in seen:
            pre = seen[c_n]
            return PcfStatus(PcfKind.FINITE, f"phi^{n}(gamma) = phi^{pre}(gamma)", n,
                             preperiod=pre - 1, period=n - pre), tuple(cs)
        seen[c_n] = n
        if escapes(c_n - b, a):
            return PcfStatus(PcfKind.INFINITE,
                             f"constant orbit escapes the radius of s -> s^2 + {a} at n = {n}",
                             n, escape_level=n), tuple(cs)
        c_n = (c_n - b) ** 2
    return PcfStatus(PcfKind.UNDETERMINED, f"no cycle or escape within {bound} steps", bound), tuple(cs)


def first_strict_growth_level(phi: QuadMap) -> int:
    """Least m from which h(phi^m(gamma)) increases strictly (non-isotrivial maps)."""
    if phi.h_gamma != phi.h_c:
        return 1
    m = 1
    while 2 ** (m - 1) * phi.h_b <= phi.h_c:
        m += 1
    return m


def classify(phi: QuadMap, pcf_search_bound: int = 64) -> MapClass:
    case = height_case(phi)
    if case is not HeightCase.ISOTRIVIAL:
        m0 = first_strict_growth_level(phi)
        pcf = PcfStatus(PcfKind.INFINITE,
                        f"h(phi^m(gamma)) strictly increases for m >= {m0}", m0)
        return MapClass(False, case, pcf)
    pcf, consts = _isotrivial_pcf(phi, pcf_search_bound)
    return MapClass(True, case, pcf, consts)


# -- base change and factorisation ---------------------------------------------


def base_change(phi: QuadMap, f: RatFunc) -> QuadMapOverK:
    """phi_f(x) = (x - gamma(f))^2 + c(f)."""
    if f.is_constant:
        raise ValueError("base change needs a non-constant f")
    return QuadMapOverK(compose(phi.gamma, f), compose(phi.c, f))


@dataclass(frozen=True)
class QuadraticFactorization:
    irreducible: bool
    roots: tuple = ()

    def linear_factors(self) -> list:
        """Factors written as ``x + a`` strings, one per root."""
        out = []
        for r in self.roots:
            neg = -r
            out.append(f"x + ({render(neg)})" if not neg.is_zero else "x")
        return out


def factor_quadratic(psi) -> QuadraticFactorization:
    """Split (x - gamma)^2 + c over Q(t) iff -c is a square; roots gamma +/- sqrt(-c)."""
    if isinstance(psi, QuadMap):
        psi = psi.over_k()
    r = ratfunc_sqrt(-psi.c)
    if r is None:
        return QuadraticFactorization(True)
    return QuadraticFactorization(False, (psi.gamma + r, psi.gamma - r))
