"""Effective stability tests built on the adjusted critical orbit.

A polynomial is stable when all its iterates are irreducible.  It suffices
that no element of {-phi(gamma), phi^2(gamma), phi^3(gamma), ...} is a square,
and for non-isotrivial maps height bounds cap how far one has to look.  A
square inside the window does not prove instability: such a certificate is
reported as inconclusive.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction

from .dynamics import (
    MapClass,
    PcfKind,
    QuadMap,
    classify,
    critical_orbit,
    escapes,
)
from .exact_arith import Poly, disc_t_shifted, poly_sqrt_exact, rational_sqrt

# the squarefree-screen evaluates each orbit element at these points first
_SCREEN_POINTS = (2, 3, 5, 7, 11, -2, -3, 13)

UNEQUAL_HEIGHT_BOUND = 8
EQUAL_HEIGHT_CONSTANT = 110


class InapplicableError(ValueError):
    """The map does not satisfy the hypotheses of the requested test."""


class StabilityVerdict(enum.Enum):
    CERTIFIED_STABLE = "certified_stable"
    SQUARE_FOUND = "square_found"
    INAPPLICABLE = "inapplicable"


@dataclass(frozen=True)
class OrbitWitness:
    n: int
    is_square: bool
    evidence: str
    value: Poly = None  # kept when the element was computed exactly


@dataclass(frozen=True)
class StabilityCertificate:
    verdict: StabilityVerdict
    checked_bound: int = 0
    orbit_witnesses: tuple = ()
    square_at: int = None
    reason: str = ""
    method: str = ""

    @property
    def is_stable(self) -> bool:
        return self.verdict is StabilityVerdict.CERTIFIED_STABLE


def adjusted_orbit(phi: QuadMap, n: int) -> list:
    """[-phi(gamma), phi^2(gamma), ..., phi^n(gamma)]."""
    orbit = critical_orbit(phi, n)
    return [-orbit[0]] + orbit[1:]


def nearest_int_log2_plus(ratio: Fraction, scale: int, shift: int) -> int:
    """Nearest integer to log2(scale * ratio) + shift, ties rounded up.

    [s] = k is the largest k with k - 1/2 <= s, i.e. 2^(2(k - shift) - 1) <= (scale*ratio)^2.
    """
    target = (Fraction(scale) * ratio) ** 2
    k = shift
    while Fraction(2) ** (2 * (k + 1 - shift) - 1) <= target:
        k += 1
    return k


def stability_check_bound(phi: QuadMap) -> int:
    """How many adjusted-orbit elements must be non-squares to certify stability."""
    if phi.is_isotrivial:
        raise InapplicableError("map is isotrivial")
    c = phi.c
    if c.is_zero or phi(c).is_zero:
        raise InapplicableError("c * phi(c) = 0, the curve (X - c) phi(X) is singular")
    if phi.h_gamma != phi.h_c:
        return UNEQUAL_HEIGHT_BOUND
    return nearest_int_log2_plus(Fraction(phi.h_gamma, phi.h_b), EQUAL_HEIGHT_CONSTANT, 3)


def _value_at(phi: QuadMap, n: int, x: Fraction) -> Fraction:
    g, c = phi.gamma(x), phi.c(x)
    v = c
    for _ in range(n - 1):
        v = (v - g) ** 2 + c
    return v


def _square_test(phi: QuadMap, n: int, value=None) -> OrbitWitness:
    """Decide whether the n-th adjusted-orbit element is a square in Q[t]."""
    sign = -1 if n == 1 else 1
    for x in _SCREEN_POINTS:
        if rational_sqrt(sign * _value_at(phi, n, Fraction(x))) is None:
            return OrbitWitness(n, False, f"value at t = {x} is not a rational square", value)
    if value is None:
        value = adjusted_orbit(phi, n)[-1]
    root = poly_sqrt_exact(value)
    if root is None:
        return OrbitWitness(n, False, "no square root in Q[t]", value)
    return OrbitWitness(n, True, f"equals ({root})^2", value)


def _scan(phi, bound, method):
    witnesses = []
    for n in range(1, bound + 1):
        w = _square_test(phi, n)
        witnesses.append(w)
        if w.is_square:
            return StabilityCertificate(
                StabilityVerdict.SQUARE_FOUND, bound, tuple(witnesses), square_at=n,
                reason="a square in the adjusted orbit makes this test inconclusive; "
                       "it does not prove the map unstable",
                method=method)
    return StabilityCertificate(StabilityVerdict.CERTIFIED_STABLE, bound, tuple(witnesses),
                                method=method)


def certify_stable(phi: QuadMap) -> StabilityCertificate:
    """Height-bounded square test for a non-isotrivial map."""
    try:
        bound = stability_check_bound(phi)
    except InapplicableError as exc:
        return StabilityCertificate(StabilityVerdict.INAPPLICABLE, reason=str(exc),
                                    method="height_bound")
    return _scan(phi, bound, "height_bound")


def certify_stable_xsq_plus_f(f: Poly) -> StabilityCertificate:
    """x^2 + f is stable whenever f is non-constant and -f is not a square."""
    if f.is_constant:
        return StabilityCertificate(StabilityVerdict.INAPPLICABLE, reason="f is constant",
                                    method="x2_plus_f")
    return _scan(QuadMap.x2_plus(f), 1, "x2_plus_f")


def _level_cap(phi: QuadMap, cls: MapClass, p: Poly) -> int:
    # beyond the returned level |s_n| grows monotonically past every root of p
    b = phi.b.coeff(0)
    a = -b
    coeffs = p.coeffs
    root_bound = 1 + max((abs(x / coeffs[-1]) for x in coeffs[:-1]), default=Fraction(0))
    c_n = Fraction(0)
    n = 1
    while True:
        s = c_n - b
        if escapes(s, a) and abs(s) > root_bound + abs(b):
            return n
        c_n = (c_n - b) ** 2
        n += 1


def isotrivial_stability_check(phi: QuadMap, n_max: int = 16, cls: MapClass = None) -> StabilityCertificate:
    """Stability of an isotrivial, post-critically infinite map.

    Here phi^n(gamma) = c + c_n with distinct constants c_n.  Each element is
    square-free of positive degree, hence a non-square, unless c_n is a root
    of p(s) = disc_t(c + s); those few levels get an exact square test.  Once
    the constant orbit escapes past every root of p no later level can be a
    root, so the scan length is extended to that level when needed.
    """
    if not phi.is_isotrivial:
        raise ValueError("isotrivial_stability_check needs an isotrivial map")
    cls = cls or classify(phi)
    if cls.pcf.kind is not PcfKind.INFINITE:
        return StabilityCertificate(StabilityVerdict.INAPPLICABLE,
                                    reason=f"critical orbit is not certified infinite ({cls.pcf.witness})",
                                    method="isotrivial")
    if phi.c.is_constant:
        return StabilityCertificate(StabilityVerdict.INAPPLICABLE, reason="h(c) = 0",
                                    method="isotrivial")
    p = disc_t_shifted(phi.c)
    bound = max(n_max, _level_cap(phi, cls, p)) if not p.is_constant else n_max
    b = phi.b.coeff(0)
    witnesses = []
    c_n = Fraction(0)
    for n in range(1, bound + 1):
        # -phi(gamma) = -c is square-free exactly when c is
        if p(c_n) != 0:
            witnesses.append(OrbitWitness(n, False, "square-free: disc_t is nonzero"))
        else:
            value = phi.c + c_n
            w = _square_test(phi, n, -value if n == 1 else value)
            witnesses.append(w)
            if w.is_square:
                return StabilityCertificate(
                    StabilityVerdict.SQUARE_FOUND, bound, tuple(witnesses), square_at=n,
                    reason="a square in the adjusted orbit makes this test inconclusive",
                    method="isotrivial")
        c_n = (c_n - b) ** 2
    return StabilityCertificate(StabilityVerdict.CERTIFIED_STABLE, bound, tuple(witnesses),
                                method="isotrivial")


def certify(phi: QuadMap, cls: MapClass = None) -> StabilityCertificate:
    """Pick the applicable test: isotrivial route, height bound, then x^2 + f."""
    cls = cls or classify(phi)
    if cls.isotrivial:
        return isotrivial_stability_check(phi, cls=cls)
    cert = certify_stable(phi)
    if not cert.is_stable and phi.gamma.is_zero and not phi.c.is_constant:
        fast = certify_stable_xsq_plus_f(phi.c)
        if fast.is_stable:
            return fast
    return cert
