import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from _helpers import from_sympy, rand_poly, to_sympy, ts, xs
from arboreal.dynamics import QuadMap, critical_orbit
from arboreal.exact_arith import (
    BiPoly,
    ParseError,
    Poly,
    RatFunc,
    T,
    disc_t_shifted,
    disc_x,
    height,
    is_square_poly,
    is_square_ratfunc,
    parse_poly,
    parse_ratfunc,
    poly_gcd,
    poly_sqrt_exact,
    render,
    resultant_x,
    squarefree_decompose,
    squarefree_part_split,
)
from arboreal.exact_arith import _zpoly as Z
from arboreal.exact_arith import modp

X = BiPoly.x()

small_ints = st.integers(min_value=-20, max_value=20)
polys = st.lists(small_ints, min_size=0, max_size=8).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero)


def P(text):
    return parse_poly(text)


# -- Poly -------------------------------------------------------------------------


def test_poly_basics():
    assert Poly().degree is None
    assert Poly().is_zero
    assert Poly([0, 0]).is_zero
    assert Poly([1, 2, 0]).degree == 1
    assert Poly([Fraction(1, 2), 1]).coeffs == (Fraction(1, 2), Fraction(1))
    assert Poly([2, 4]).lc == 4
    assert (T * T - 1) == P("t^2 - 1")
    assert P("t^2 - 1").exact_div(P("t - 1")) == P("t + 1")
    with pytest.raises(ArithmeticError):
        P("t^2 + 1").exact_div(P("t - 1"))
    assert P("3*t^2").monic() == P("t^2")
    assert P("t^3 + t")(2) == 10
    assert P("t^2")(Fraction(1, 3)) == Fraction(1, 9)
    assert P("t^2 + 1")(P("t - 1")) == P("t^2 - 2*t + 2")


def test_poly_is_hashable_and_canonical():
    a = Poly([Fraction(2, 4), Fraction(1, 2)])
    b = Poly([Fraction(1, 2), Fraction(1, 2)])
    assert a == b and hash(a) == hash(b)
    assert len({a, b, P("t")}) == 2


@settings(max_examples=200, deadline=None)
@given(polys, polys)
def test_poly_ring_ops_match_sympy(a, b):
    assert to_sympy(a * b) == to_sympy(a) * to_sympy(b)
    assert to_sympy(a + b) == to_sympy(a) + to_sympy(b)
    assert to_sympy(a - b) == to_sympy(a) - to_sympy(b)
    if not b.is_zero:
        q, r = divmod(a, b)
        sq, sr = sympy.div(to_sympy(a), to_sympy(b))
        assert to_sympy(q) == sq and to_sympy(r) == sr


def test_kronecker_mul_matches_schoolbook():
    rng = random.Random(7)
    for _ in range(30):
        a = [rng.randint(-10**30, 10**30) for _ in range(rng.randint(40, 200))]
        b = [rng.randint(-10**5, 10**5) for _ in range(rng.randint(40, 200))]
        assert Z.mul(a, b) == Z.strip(Z._schoolbook(a, b))
    a = [rng.randint(-9, 9) for _ in range(100)]
    assert Z.mul(a, a) == Z.strip(Z._schoolbook(a, a))


# -- gcd ---------------------------------------------------------------------------


def test_gcd_examples():
    assert poly_gcd(P("t^2 - 1"), P("t - 1")) == P("t - 1")
    assert poly_gcd(P("3*t + 6"), Poly()) == P("t + 2")
    assert poly_gcd(Poly(), Poly()) == Poly()
    phi = QuadMap.parse("t", "t + 1")
    o = critical_orbit(phi, 3)
    assert poly_gcd(o[1], o[2]) == Poly.const(1)


@settings(max_examples=200, deadline=None)
@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_gcd_divides_and_cofactors_coprime(a, b, c):
    a, b = a * c, b * c
    g = poly_gcd(a, b)
    assert g.lc == 1
    assert divmod(a, g)[1].is_zero and divmod(b, g)[1].is_zero
    assert poly_gcd(a.exact_div(g), b.exact_div(g)).is_constant
    assert to_sympy(g) == sympy.gcd(to_sympy(a), to_sympy(b)).monic()


# -- square-free decomposition and square roots ---------------------------------------


def test_squarefree_examples():
    d = squarefree_decompose(P("t^3"))
    assert d.unit == 1 and d.factors == ((P("t"), 3),)
    d = squarefree_decompose(P("(t^2+1)*t^4"))
    assert d.unit == 1 and set(d.factors) == {(P("t^2+1"), 1), (P("t"), 4)}
    d = squarefree_decompose(P("4*t^2 + 4*t + 1"))
    assert d.unit == 4 and d.factors == ((P("t + 1/2"), 2),)
    with pytest.raises(ValueError):
        squarefree_decompose(Poly())


def test_split_examples():
    assert squarefree_part_split(P("t^2*(t^2+1)")) == (P("t^2+1"), P("t"), 1)
    assert squarefree_part_split(P("t^6")) == (Poly.const(1), P("t^3"), 1)
    assert squarefree_part_split(P("2*t")) == (P("t"), Poly.const(1), 2)
    d, y, u = squarefree_part_split(P("-12*t^3*(t+1)^4*(t-2)"))
    assert d * y * y * u == P("-12*t^3*(t+1)^4*(t-2)")
    assert d.lc == 1 and y.lc == 1
    with pytest.raises(ValueError):
        squarefree_part_split(Poly())


def test_sqrt_examples():
    assert poly_sqrt_exact(P("(t^2+t)^2")) == P("t^2 + t")
    assert poly_sqrt_exact(P("-t")) is None
    assert poly_sqrt_exact(P("t^2*(t^2+1)")) is None
    assert poly_sqrt_exact(P("9/4")) == Poly.const(Fraction(3, 2))
    assert poly_sqrt_exact(P("2*t^2")) is None
    assert poly_sqrt_exact(Poly()) == Poly()
    assert is_square_poly(P("4*(t-1)^2*(t+3)^4"))


def test_is_square_ratfunc_examples():
    assert is_square_ratfunc(parse_ratfunc("1/t^2"))
    assert not is_square_ratfunc(parse_ratfunc("t^2 + 1"))
    assert is_square_ratfunc(parse_ratfunc("9/4"))
    assert not is_square_ratfunc(parse_ratfunc("t/(t+1)"))
    assert is_square_ratfunc(parse_ratfunc("(t+1)/(4*t^2+4*t)*t"))
    with pytest.raises(ValueError):
        is_square_ratfunc(RatFunc(0))


@settings(max_examples=100, deadline=None)
@given(nonzero_polys, nonzero_polys)
def test_ratfunc_square_property(a, b):
    r = RatFunc(a, b)
    assert is_square_ratfunc(r * r)
    assert not is_square_ratfunc(r * r * RatFunc(T))


# -- resultants and discriminants ----------------------------------------------------


def test_resultant_examples():
    p, q = P("t^2 + 1"), P("3*t")
    assert resultant_x(X - p, X - q) == p - q
    assert resultant_x(X * X - T, X * 2) == P("-4*t")
    g, c = P("t^3 - 1"), P("-t")
    phi = (X - g) * (X - g) + c
    assert resultant_x(phi, phi.derivative()) == c * -4 * -1
    with pytest.raises(ValueError):
        resultant_x(BiPoly(), X)


def test_disc_examples():
    g, c = P("t^2 + 3*t"), P("t - 7")
    assert disc_x((X - g) * (X - g) + c) == -4 * c
    assert disc_x(X * X + T) == P("-4*t")
    with pytest.raises(ValueError):
        disc_x(BiPoly([T]))


def _sylvester_disc(coeffs):
    poly = sum((to_sympy(c).as_expr() * xs ** i for i, c in enumerate(coeffs)), sympy.Integer(0))
    return from_sympy(sympy.expand(sympy.discriminant(poly, xs)))


def test_disc_matches_sympy_on_quadratics_and_cubics():
    rng = random.Random(11)
    for deg in (2, 3):
        for _ in range(25):
            coeffs = [rand_poly(rng, rng.randint(0, 4), rational=True) for _ in range(deg + 1)]
            assert disc_x(BiPoly(coeffs)) == _sylvester_disc(coeffs)


def test_disc_t_shifted_examples():
    assert disc_t_shifted(P("t + 1")) == Poly.const(1)
    assert disc_t_shifted(P("t^2")) == P("-4*t")  # printed in the variable s
    p = disc_t_shifted(P("t^3"))
    assert p == P("-27*t^2") and p.degree == 2
    rng = random.Random(3)
    for _ in range(10):
        c = rand_poly(rng, rng.randint(1, 5))
        assert disc_t_shifted(c).degree == c.degree - 1
    with pytest.raises(ValueError):
        disc_t_shifted(Poly.const(5))


# -- heights, parsing, rendering ----------------------------------------------------


def test_height_examples():
    assert height(P("t^3 - 1")) == 3
    assert height(parse_ratfunc("(t^6-t^5-1)/t^6")) == 6
    assert height(Poly.const(5)) == 0
    assert height(Poly()) == 0


@settings(max_examples=100, deadline=None)
@given(nonzero_polys, nonzero_polys)
def test_height_properties(a, b):
    ra, rb = RatFunc(a), RatFunc(b, a)
    assert height(ra * rb) <= height(ra) + height(rb)
    assert height(a * b) == height(a) + height(b)
    assert height(1 / rb) == height(rb)


def test_parse_examples():
    assert P("t^3 - 1").coeffs == (-1, 0, 0, 1)
    assert P("-(1/2)*t + 3").coeffs == (3, Fraction(-1, 2))
    r = parse_ratfunc("(t^6-t^5-1)/t^6")
    assert r.num == P("t^6 - t^5 - 1") and r.den == P("t^6")
    assert P("3/2^2") == Poly.const(Fraction(3, 4))
    assert P(" ( t + 1 ) ^ 2 ") == P("t^2+2*t+1")


@pytest.mark.parametrize("bad, pos", [("t^", 2), ("t + x", 4), ("1.5*t", 1), ("(t + 1", 6), ("2 $ t", 2)])
def test_parse_errors_carry_position(bad, pos):
    with pytest.raises(ParseError) as exc:
        parse_poly(bad)
    assert exc.value.position == pos


def test_parse_poly_rejects_proper_fraction():
    with pytest.raises(ValueError):
        parse_poly("1/t")


@settings(max_examples=200, deadline=None)
@given(st.lists(st.fractions(max_denominator=9).filter(lambda q: abs(q) < 50), max_size=7), nonzero_polys)
def test_render_round_trip(cs, den):
    p = Poly(cs)
    assert parse_poly(render(p)) == p
    r = RatFunc(p, den)
    assert parse_ratfunc(render(r)) == r


# -- arithmetic mod p ----------------------------------------------------------------


def test_random_primes_reproducible():
    a = modp.random_primes(5)
    assert a == modp.random_primes(5)
    assert all(sympy.isprime(p) and p < 2 ** 31 for p in a)
    assert len(set(a)) == 5
    assert modp.random_primes(3, seed=1) != a[:3]


def test_miller_rabin_matches_sympy():
    rng = random.Random(5)
    for n in list(range(2000)) + [rng.randrange(2 ** 40) for _ in range(500)]:
        assert modp.is_probable_prime(n) == sympy.isprime(n)


def _sym_mod(arr, p):
    return sympy.Poly([int(x) for x in reversed(arr)] or [0], ts, modulus=p)


def test_modp_kernels_match_sympy():
    rng = random.Random(9)
    p = modp.random_primes(1)[0]
    for _ in range(40):
        a = modp.reduce_poly(rand_poly(rng, rng.randint(1, 30), coeff=10**6), p)
        b = modp.reduce_poly(rand_poly(rng, rng.randint(1, 30), coeff=10**6), p)
        sa, sb = _sym_mod(a, p), _sym_mod(b, p)
        assert _sym_mod(modp.mul(a, b, p), p) == sa * sb
        assert _sym_mod(modp.rem(a, b, p), p) == sa.rem(sb)
        assert _sym_mod(modp.gcd(a, b, p), p) == sympy.gcd(sa, sb).monic()
        assert np.array_equal(modp.quo(modp.mul(a, b, p), b, p), a)


def test_odd_part_mod_p():
    p = modp.random_primes(1)[0]
    g = P("(t^2+1)*(t-3)^2*(t+5)^3*t^4")
    odd = modp.odd_part(modp.reduce_poly(g, p), p)
    assert np.array_equal(odd, modp.reduce_poly(P("(t^2+1)*(t+5)"), p))


def test_certify_coprime_examples():
    assert modp.certify_coprime(P("t^2 + 1"), P("t - 1"))
    assert not modp.certify_coprime(P("t^2 - 1"), P("t - 1"))
    assert modp.certify_coprime(Poly.const(3), P("t"))
    assert not modp.certify_coprime(Poly(), P("t"))
