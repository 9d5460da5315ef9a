"""Per-level Galois analysis of the preimage tower of a quadratic map.

Level n is maximal when [K_n : K_{n-1}] = 2^(2^(n-1)).  For a stable map
this fails exactly when phi^n(gamma) is a square in K_{n-1}.  Levels 1 and 2
are decided outright by square tests in K and in the quadratic extension
K_1.  From level 3 on the module certifies maximality one-sidedly: write
phi^n(gamma) = u * d * y^2 with d square-free; if some prime factor of d
divides none of phi^t(gamma), phi^t(0) for t <= n/2, the level is maximal.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction

from .dynamics import (
    HeightKind,
    QuadMap,
    QuadMapOverK,
    constant_orbit,
    critical_orbit,
    escapes,
    predict_height_critical,
    zero_orbit,
)
from .exact_arith import (
    BiPoly,
    Poly,
    RatFunc,
    disc_t_shifted,
    disc_x,
    is_square_ratfunc,
    poly_gcd,
    ratfunc_sqrt,
    squarefree_part_split,
)
from .exact_arith import modp
from .stability import StabilityCertificate

MODULAR_FROM_LEVEL = 9
# the fast path also engages below level 9 once phi^n(gamma) is this large
MODULAR_FROM_DEGREE = 256
EXACT_UP_TO_LEVEL = 10
DISCRIMINANT_TOWER_MAX = 4


class PeriodicCriticalOrbit(ArithmeticError):
    """phi^n(gamma) = 0, so gamma is periodic and the tower degenerates."""


class LevelVerdict(enum.Enum):
    CERTIFIED_MAXIMAL = "certified_maximal"
    NON_MAXIMAL_EXACT = "non_maximal_exact"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class Witness:
    kind: str  # "coprime_part", "square_witness" or "none"
    description: str
    poly: Poly = None
    degree: int = None


@dataclass(frozen=True)
class LevelReport:
    n: int
    verdict: LevelVerdict
    witness: Witness
    # exact log2 shortfall of [K_n : K_{n-1}] from 2^(2^(n-1)); None when unknown
    deficit: int = None
    method: str = ""

    @property
    def worst_case_deficit(self) -> int:
        return 2 ** (self.n - 1) - 1


@dataclass(frozen=True)
class LevelObstruction:
    n: int
    value: Poly
    d: Poly
    y: Poly
    u: Fraction

    def recompose(self) -> Poly:
        return self.d * self.y * self.y * self.u


def obstruction(phi: QuadMap, n: int, modular: bool = False) -> LevelObstruction:
    """phi^n(gamma) = u * d * y^2 with d monic square-free and y monic.

    With ``modular`` set, square-freeness of phi^n(gamma) is first certified
    modulo word-size primes, which skips Yun's algorithm in the common case.
    """
    if n < 1:
        raise ValueError("level must be at least 1")
    value = critical_orbit(phi, n)[-1]
    if value.is_zero:
        raise PeriodicCriticalOrbit(f"phi^{n}(gamma) = 0")
    if modular and not value.is_constant and modp.certify_coprime(value, value.derivative()):
        return LevelObstruction(n, value, value.monic(), Poly.const(1), value.lc)
    d, y, u = squarefree_part_split(value)
    return LevelObstruction(n, value, d, y, u)


def refinement_product(phi: QuadMap, n: int) -> Poly:
    """prod over 1 <= t <= n//2 of phi^t(gamma) * phi^t(0)."""
    if n < 2:
        raise ValueError("refinement product needs n >= 2")
    k = n // 2
    out = Poly.const(1)
    for a, b in zip(critical_orbit(phi, k), zero_orbit(phi, k)):
        out = out * a * b
    return out


# -- levels 1 and 2: exact Kummer tests ---------------------------------------


def _square_in_quadratic_ext(a: RatFunc, b: RatFunc, D: RatFunc) -> bool:
    """Is a + b*sqrt(D) a square in K(sqrt(D))?  D must be a non-square of K."""
    if b.is_zero:
        return is_square_ratfunc(a) or is_square_ratfunc(a * D)
    norm = a * a - b * b * D
    if norm.is_zero:
        return False
    n = ratfunc_sqrt(norm)
    if n is None:
        return False
    for cand in (a + n, a - n):
        if not cand.is_zero and ratfunc_sqrt(cand / 2) is not None:
            return True
    return False


def level_one(psi) -> LevelReport:
    """K_1/K is maximal iff disc(phi) = -4c is not a square in K."""
    c = psi.c if isinstance(psi, QuadMapOverK) else RatFunc(psi.c)
    if c.is_zero or is_square_ratfunc(-c):
        return LevelReport(1, LevelVerdict.NON_MAXIMAL_EXACT,
                           Witness("square_witness", "-c is a square in Q(t), phi splits"),
                           deficit=1, method="kummer")
    return LevelReport(1, LevelVerdict.CERTIFIED_MAXIMAL,
                       Witness("square_witness", "-c is not a square in Q(t)"),
                       deficit=0, method="kummer")


def level_two(psi) -> LevelReport:
    """Exact decision at n = 2 in K_1 = K(sqrt(-c)).

    phi^2(gamma) is a square in K_1 iff it or -c*phi^2(gamma) is a square in
    K.  When it is, the shortfall is 1 unless the single root discriminant
    4(gamma - c) + 4 sqrt(-c) is itself a square in K_1, which makes it 2.
    """
    if isinstance(psi, QuadMap):
        psi = psi.over_k()
    D = -psi.c
    if D.is_zero or is_square_ratfunc(D):
        return LevelReport(2, LevelVerdict.UNDETERMINED,
                           Witness("none", "phi is reducible, the level-2 criterion needs phi irreducible"),
                           method="kummer")
    v = psi(psi(psi.gamma))
    if v.is_zero:
        raise PeriodicCriticalOrbit("phi^2(gamma) = 0")
    if not (is_square_ratfunc(v) or is_square_ratfunc(v * D)):
        return LevelReport(2, LevelVerdict.CERTIFIED_MAXIMAL,
                           Witness("square_witness",
                                   "phi^2(gamma) and -c*phi^2(gamma) are non-squares in Q(t)"),
                           deficit=0, method="kummer")
    full = _square_in_quadratic_ext(4 * (psi.gamma - psi.c), RatFunc(4), D)
    deficit = 2 if full else 1
    which = "phi^2(gamma)" if is_square_ratfunc(v) else "-c*phi^2(gamma)"
    return LevelReport(2, LevelVerdict.NON_MAXIMAL_EXACT,
                       Witness("square_witness", f"{which} is a square in Q(t)"),
                       deficit=deficit, method="kummer")


# -- n >= 3: primitive prime divisor certificate -------------------------------


def _coprime_part(e: Poly, P: Poly, use_modular: bool):
    while True:
        if use_modular and modp.certify_coprime(e, P):
            return e
        g = poly_gcd(e, P)
        if g.is_constant:
            return e
        e = e.exact_div(g)


def _gcd_route(phi: QuadMap, n: int, use_modular: bool, primes=None) -> LevelReport:
    if use_modular:
        fast = _modular_route(phi, n, primes or modp.random_primes(3))
        if fast.verdict is LevelVerdict.CERTIFIED_MAXIMAL:
            return fast
    obs = obstruction(phi, n, modular=use_modular)
    method = "ppd_exact"
    if obs.d.is_constant:
        return LevelReport(n, LevelVerdict.UNDETERMINED,
                           Witness("none", "obstruction d_n is a unit; the gcd certificate does not apply"),
                           method=method)
    e = _coprime_part(obs.d, refinement_product(phi, n), use_modular)
    if e.is_constant:
        return LevelReport(n, LevelVerdict.UNDETERMINED,
                           Witness("none", "every prime of d_n divides an orbit value of index <= n/2"),
                           method=method)
    return LevelReport(n, LevelVerdict.CERTIFIED_MAXIMAL,
                       Witness("coprime_part",
                               "square-free part of phi^n(gamma) has a factor prime to "
                               "phi^t(gamma)*phi^t(0), t <= n/2",
                               poly=e, degree=e.degree),
                       deficit=0, method=method)


def _orbit_mod_p(phi: QuadMap, n: int, p: int):
    g = modp.reduce_poly(phi.gamma, p)
    c = modp.reduce_poly(phi.c, p)
    v = c
    for _ in range(n - 1):
        w = modp.sub(v, g, p)
        v = modp.add(modp.mul(w, w, p), c, p)
    return v


def _modular_route(phi: QuadMap, n: int, primes) -> LevelReport:
    """Certificate computed mod p.

    With the leading coefficients of phi^n(gamma) and P_n intact mod p and
    p > deg, every F_p-factor of odd multiplicity left after stripping the
    factors shared with P_n mod p comes from a Q-irreducible factor of odd
    multiplicity prime to P_n, i.e. a prime of d_n prime to P_n.
    """
    pred = predict_height_critical(phi, n)
    P = refinement_product(phi, n)
    for p in primes:
        if pred.kind is not HeightKind.EXACT or p <= pred.value:
            continue
        try:
            v = _orbit_mod_p(phi, n, p)
            Pp = modp.reduce_poly(P, p)
        except modp.BadPrime:
            continue
        # the leading coefficient survives reduction iff the degree is the true one
        if v.size - 1 != pred.value or Pp.size - 1 != P.degree:
            continue
        e = v
        while True:
            g = modp.gcd(e, Pp, p)
            if g.size == 1:
                break
            e = modp.quo(e, g, p)
        e = modp.odd_part(e, p)
        if e.size <= 1:
            continue
        return LevelReport(n, LevelVerdict.CERTIFIED_MAXIMAL,
                           Witness("coprime_part",
                                   f"mod {p}, phi^{n}(gamma) has odd-multiplicity factors of total "
                                   f"degree {e.size - 1} prime to phi^t(gamma)*phi^t(0), t <= n/2",
                                   degree=e.size - 1),
                           deficit=0, method="ppd_modular")
    return LevelReport(n, LevelVerdict.UNDETERMINED,
                       Witness("none", f"no certificate modulo {len(primes)} primes"),
                       method="ppd_modular")


def certify_level(phi: QuadMap, n: int, stable: StabilityCertificate, *,
                  modular: bool = True, route: str = "auto", primes=None) -> LevelReport:
    """Maximality verdict for K_n/K_{n-1}.

    ``route`` is "auto", "kummer" (levels 1-2 only) or "gcd".  Exact gcd
    computations are used up to level 10; from level 9 the modular fast path
    is tried first, and above level 10 it is the only route unless
    ``modular`` is switched off.
    """
    if stable is None or not stable.is_stable:
        raise ValueError("certify_level needs a certified-stable map (phi^(n-1) irreducible)")
    if n < 1:
        raise ValueError("level must be at least 1")
    if route not in ("auto", "kummer", "gcd"):
        raise ValueError(f"unknown route {route!r}")
    if route == "kummer" or (route == "auto" and n <= 2):
        if n == 1:
            return level_one(phi)
        if n == 2:
            return level_two(phi)
        raise ValueError("the Kummer route is exact only for n <= 2")
    if n == 1:
        return level_one(phi)
    if modular and n > EXACT_UP_TO_LEVEL:
        return _modular_route(phi, n, primes or modp.random_primes(3))
    fast = n >= MODULAR_FROM_LEVEL or critical_orbit(phi, n)[-1].degree >= MODULAR_FROM_DEGREE
    return _gcd_route(phi, n, modular and fast, primes)


def certify_levels(phi: QuadMap, max_level: int, stable: StabilityCertificate,
                   modular: bool = True) -> list:
    return [certify_level(phi, n, stable, modular=modular) for n in range(1, max_level + 1)]


# -- identities ----------------------------------------------------------------


@dataclass(frozen=True)
class CurveIdentityCheck:
    n: int
    lhs: Poly
    rhs: Poly
    holds: bool


def verify_curve_identity(phi: QuadMap, n: int) -> CurveIdentityCheck:
    """Check that (X, Y) lies on Y^2 = D (X - c)((X - gamma)^2 + c).

    With phi^n(gamma) = u d y^2 the twist scalar is D = u*d (the unit is
    folded into the twist), X = phi^(n-1)(gamma) and
    Y = y * D * (phi^(n-2)(gamma) - gamma).
    """
    if n < 2:
        raise ValueError("the curve identity needs n >= 2")
    obs = obstruction(phi, n)
    orbit = [phi.gamma] + critical_orbit(phi, n)
    X = orbit[n - 1]
    D = obs.d * obs.u
    Y = obs.y * D * (orbit[n - 2] - phi.gamma)
    lhs = Y * Y
    rhs = D * (X - phi.c) * phi(X)
    return CurveIdentityCheck(n, lhs, rhs, lhs == rhs)


@dataclass(frozen=True)
class DiscriminantStep:
    m: int
    sign: int = None
    exponent: int = None

    @property
    def fitted(self) -> bool:
        return self.sign is not None


@dataclass(frozen=True)
class DiscriminantTower:
    deltas: tuple
    steps: tuple

    def law_holds(self, law=lambda m: (1 if m >= 2 else -1, 2 ** m)) -> bool:
        return all(s.fitted and (s.sign, s.exponent) == law(s.m) for s in self.steps)


def _power_of_two(q: Fraction):
    sign = 1 if q > 0 else -1
    q = abs(q)
    num, den = q.numerator, q.denominator
    if num & (num - 1) or den & (den - 1):
        return None
    return sign, num.bit_length() - den.bit_length()


def iterate_bipoly(phi: QuadMap, m: int) -> BiPoly:
    """phi^m(x) as a polynomial in x over Q[t]."""
    out = BiPoly.x()
    for _ in range(m):
        out = phi(out)
    return out


def discriminant_tower(phi: QuadMap, M: int) -> DiscriminantTower:
    """Delta_1..Delta_M and, per step, the sign and power of two in
    Delta_m = sign * 2^E * Delta_{m-1}^2 * phi^m(gamma), with Delta_0 = 1."""
    if M < 1:
        raise ValueError("need at least one level")
    if M > DISCRIMINANT_TOWER_MAX:
        raise ValueError(f"discriminant tower is limited to M <= {DISCRIMINANT_TOWER_MAX}")
    orbit = critical_orbit(phi, M)
    deltas, steps = [], []
    prev = Poly.const(1)
    for m in range(1, M + 1):
        delta = disc_x(iterate_bipoly(phi, m))
        deltas.append(delta)
        q, r = divmod(delta, prev * prev * orbit[m - 1])
        fit = _power_of_two(q.coeff(0)) if (r.is_zero and q.is_constant and not q.is_zero) else None
        steps.append(DiscriminantStep(m, *fit) if fit else DiscriminantStep(m))
        prev = delta
    return DiscriminantTower(tuple(deltas), tuple(steps))


# -- isotrivial maps -----------------------------------------------------------


@dataclass(frozen=True)
class CandidateLevels:
    p: Poly  # polynomial in s
    levels: tuple
    checked_up_to: int
    complete: bool  # True when no level beyond checked_up_to can be a candidate


def isotrivial_candidate_levels(phi: QuadMap, N: int) -> CandidateLevels:
    """Levels n <= N with p(c_n) = 0, where p(s) = disc_t(c + s), phi^n(gamma) = c + c_n.

    Every non-maximal level is among them.  The scan is extended past N
    until the constant orbit has escaped beyond all roots of p, which makes
    the returned set complete.
    """
    if not phi.is_isotrivial:
        raise ValueError("candidate levels are defined for isotrivial maps")
    if phi.c.is_constant:
        raise ValueError("needs h(gamma) >= 1")
    p = disc_t_shifted(phi.c)
    b = phi.b.coeff(0)
    a = -b
    coeffs = p.coeffs
    root_bound = 1 + max((abs(x / coeffs[-1]) for x in coeffs[:-1]), default=Fraction(0))
    levels = []
    seen = set()
    c_n = Fraction(0)
    n = 0
    complete = False
    while True:
        n += 1
        if c_n in seen:
            break  # periodic constant orbit, nothing new beyond this point
        seen.add(c_n)
        if p(c_n) == 0:
            levels.append(n)
        s = c_n - b
        if escapes(s, a) and abs(s) > root_bound + abs(b):
            complete = True
            if n >= N:
                break
        elif n >= max(N, 4096):
            break
        c_n = (c_n - b) ** 2
    if len(levels) > max(p.degree, 0):
        raise AssertionError("more candidate levels than roots of p: constant orbit not injective")
    return CandidateLevels(p, tuple(levels), n, complete)


def pairwise_coprime_orbit(phi: QuadMap, N: int) -> bool:
    orbit = critical_orbit(phi, N)
    return all(poly_gcd(orbit[i], orbit[j]).is_constant
               for i in range(N) for j in range(i + 1, N))
