import random
from fractions import Fraction

import pytest

from _helpers import rand_map, rand_poly
from arboreal.dynamics import (
    HeightCase,
    HeightKind,
    PcfKind,
    QuadMap,
    base_change,
    classify,
    constant_orbit,
    critical_orbit,
    escapes,
    factor_quadratic,
    iterate_at,
    predict_height_critical,
    predict_height_zero,
    rho,
    zero_orbit,
)
from arboreal.exact_arith import Poly, RatFunc, T, parse_poly, parse_ratfunc


def P(text):
    return parse_poly(text)


def test_iterate_at_examples():
    phi = QuadMap.parse("0", "t")
    assert iterate_at(phi, Poly(), 2) == P("t^2 + t")
    psi = QuadMap.parse("t^3 - 1", "-t")
    assert iterate_at(psi, psi.gamma, 1) == psi.c
    iso = QuadMap.parse("t", "t + 1")
    assert iterate_at(iso, T, 2) == P("t + 2")
    assert iterate_at(iso, T, 0) == T
    with pytest.raises(ValueError):
        iterate_at(iso, T, -1)


def test_iterate_on_rational_functions():
    phi = QuadMap.parse("0", "t")
    x0 = parse_ratfunc("1/t")
    assert iterate_at(phi, x0, 1) == parse_ratfunc("(1 + t^3)/t^2")


def test_functoriality():
    rng = random.Random(1)
    for _ in range(20):
        phi = rand_map(rng, 3)
        x0 = rand_poly(rng, 2)
        a, b = rng.randint(0, 3), rng.randint(0, 3)
        assert iterate_at(phi, x0, a + b) == iterate_at(phi, iterate_at(phi, x0, a), b)


def test_critical_orbit_examples():
    # brute force, the constants grow as 0, 1, 4 shifted by c
    assert critical_orbit(QuadMap.parse("t", "t + 1"), 3) == [P("t + 1"), P("t + 2"), P("t + 5")]
    assert critical_orbit(QuadMap.parse("0", "t"), 2) == [T, P("t^2 + t")]
    phi = QuadMap.parse("t^2", "t^2")
    assert critical_orbit(phi, 1)[0] == phi.c
    assert zero_orbit(QuadMap.parse("0", "t"), 3)[-1] == P("(t^2+t)^2 + t")
    with pytest.raises(ValueError):
        critical_orbit(phi, 0)


def test_height_predictions_examples():
    p = predict_height_critical(QuadMap.parse("0", "t^3"), 3)
    assert (p.kind, p.value) == (HeightKind.EXACT, 12)
    phi = QuadMap.parse("t^2 + t", "t^2")
    assert predict_height_critical(phi, 1).value == 2
    assert predict_height_critical(phi, 1).kind is HeightKind.EXACT
    assert (predict_height_critical(phi, 3).kind, predict_height_critical(phi, 3).value) == (HeightKind.EXACT, 4)
    z = predict_height_zero(QuadMap.parse("0", "t"), 3)
    assert (z.kind, z.value) == (HeightKind.UPPER_BOUND, 8)
    assert zero_orbit(QuadMap.parse("0", "t"), 3)[-1].height() == 4
    z = predict_height_zero(phi, 1)
    assert (z.kind, z.value) == (HeightKind.EXACT, 4)
    with pytest.raises(ValueError):
        predict_height_critical(phi, 0)
    with pytest.raises(ValueError):
        predict_height_zero(phi, 0)


def test_tie_case_is_upper_bound():
    # h(c) = 2 = 2^(m-1) h(b) at m = 2: leading terms may cancel
    phi = QuadMap(P("t^2 + t"), P("t^2"))
    pred = predict_height_critical(phi, 2)
    assert pred.kind is HeightKind.UPPER_BOUND
    assert pred.agrees_with(critical_orbit(phi, 2)[-1].height())
    cancel = QuadMap(P("-t^2 + t"), P("-t^2"))
    assert critical_orbit(cancel, 2)[-1].height() < 2


def test_rho():
    r = rho(QuadMap.parse("t^2", "t^2 + t"))
    assert r.value == pytest.approx(2.0)
    assert r.exceeded_by(3) and not r.exceeded_by(2) and r.equals(2)
    assert rho(QuadMap.parse("t", "2*t")).value == pytest.approx(1.0)
    r3 = rho(QuadMap.parse("t^3", "t^3 + t"))
    assert not r3.exceeded_by(2) and r3.exceeded_by(3)
    assert not any(r3.equals(m) for m in range(1, 10))
    with pytest.raises(ValueError):
        rho(QuadMap.parse("t", "t + 1"))
    with pytest.raises(ValueError):
        rho(QuadMap.parse("0", "t"))


def test_classify_examples():
    c = classify(QuadMap.parse("0", "t"))
    assert not c.isotrivial and c.pcf.kind is PcfKind.INFINITE
    assert c.height_case is HeightCase.UNEQUAL_HEIGHTS
    c = classify(QuadMap.parse("t", "t + 1"))
    assert c.isotrivial and c.pcf.kind is PcfKind.INFINITE and c.post_critically_infinite
    c = classify(QuadMap.parse("t", "t - 1"))
    assert c.isotrivial and c.pcf.kind is PcfKind.FINITE
    assert (c.pcf.preperiod, c.pcf.period) == (0, 2)
    c = classify(QuadMap.parse("t^2", "t^2 + t"))
    assert c.height_case is HeightCase.EQUAL_HEIGHTS_NON_ISOTRIVIAL


def test_classify_undetermined_within_budget():
    # s -> s^2 - 2 from s = 2 is fixed after two steps; with a budget of one step nothing is decided
    phi = QuadMap(P("t"), P("t - 2"))
    assert classify(phi, pcf_search_bound=1).pcf.kind is PcfKind.UNDETERMINED
    assert classify(phi).pcf.kind is PcfKind.FINITE


def test_isotrivial_orbit_matches_constants():
    rng = random.Random(4)
    for _ in range(20):
        c = rand_poly(rng, rng.randint(1, 4))
        b = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
        phi = QuadMap(c + b, c)
        consts = constant_orbit(phi, 6)
        assert critical_orbit(phi, 6) == [c + k for k in consts]


def test_escape_radius():
    # radius for s^2 + a is (1 + sqrt(1 + 4|a|))/2; for a = 2 it is 2
    assert not escapes(Fraction(2), Fraction(2))
    assert escapes(Fraction(201, 100), Fraction(2))
    assert not escapes(Fraction(-1), Fraction(0))


def test_heights_oracle_small_sample():
    rng = random.Random(2)
    for _ in range(30):
        phi = rand_map(rng, 4)
        for m in range(1, 7):
            assert predict_height_critical(phi, m).agrees_with(critical_orbit(phi, m)[-1].height())
            assert predict_height_zero(phi, m).agrees_with(zero_orbit(phi, m)[-1].height())


def test_classify_invariant_under_translation():
    rng = random.Random(8)
    for _ in range(20):
        phi = rand_map(rng, 3)
        p = rand_poly(rng, 2)
        moved = QuadMap(phi.gamma + p, phi.c + p)
        a, b = classify(phi), classify(moved)
        # x -> x + p conjugates gamma, c to gamma + p, c + p and keeps b
        assert a.isotrivial == b.isotrivial
        assert a.pcf.kind is b.pcf.kind


def test_non_isotrivial_always_infinite():
    rng = random.Random(6)
    for _ in range(50):
        phi = rand_map(rng, 4)
        if not phi.is_isotrivial:
            assert classify(phi).pcf.kind is PcfKind.INFINITE


def test_base_change_examples():
    phi = QuadMap.parse("t^3 - 1", "-t")
    psi = base_change(phi, parse_ratfunc("1/t^2"))
    assert psi.gamma == parse_ratfunc("(1 - t^6)/t^6")
    assert psi.c == parse_ratfunc("-1/t^2")
    psi = base_change(QuadMap.parse("0", "t"), parse_ratfunc("-t^2 - 1"))
    assert psi.is_polynomial and psi.to_polynomial_map() == QuadMap.parse("0", "-t^2 - 1")
    assert base_change(phi, RatFunc(T)).to_polynomial_map() == phi
    with pytest.raises(ValueError):
        base_change(phi, RatFunc(3))


def test_factor_quadratic_examples():
    phi = QuadMap.parse("t^3 - 1", "-t")
    fac = factor_quadratic(base_change(phi, parse_ratfunc("1/t^2")))
    assert not fac.irreducible
    assert set(fac.roots) == {parse_ratfunc("-(t^6 - t^5 - 1)/t^6"), parse_ratfunc("-(t^6 + t^5 - 1)/t^6")}
    assert factor_quadratic(QuadMap.parse("0", "t")).irreducible
    double = factor_quadratic(QuadMap.parse("t + 1", "0"))
    assert double.roots == (RatFunc(P("t + 1")), RatFunc(P("t + 1")))
    assert factor_quadratic(QuadMap.parse("0", "-t^2")).linear_factors() == ["x + (-t)", "x + (t)"]
