"""Exact polynomial and rational-function arithmetic."""
import random

import pytest
from hypothesis import given, settings, strategies as st

from braidcells.exactalg import (MissingVariable, PoleAtPoint, Polynomial,
                                 RationalFunction, ZeroDenominator,
                                 factor_against_pool, parse_poly, parse_rf,
                                 poly_div, poly_gcd, poly_str, rat,
                                 rf_normalize, rf_str)


def zvar(i):
    return Polynomial.variable(f"z{i}")


coeffs = st.integers(min_value=-4, max_value=4)


@st.composite
def small_polys(draw, nvars=3, nterms=4, maxdeg=2):
    p = Polynomial.zero
    for _ in range(draw(st.integers(0, nterms))):
        c = draw(coeffs)
        term = Polynomial.const(c)
        for i in range(1, nvars + 1):
            term = term * zvar(i) ** draw(st.integers(0, maxdeg))
        p = p + term
    return p


@settings(max_examples=60, deadline=None)
@given(small_polys(), small_polys(), small_polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + Polynomial.zero == a
    assert a * Polynomial.one == a


@settings(max_examples=40, deadline=None)
@given(small_polys(), small_polys())
def test_exact_division_roundtrip(a, b):
    if not b:
        return
    q = poly_div(a * b, b)
    assert q == a


@settings(max_examples=30, deadline=None)
@given(small_polys(nvars=2), small_polys(nvars=2), small_polys(nvars=2))
def test_gcd_divides_and_reconstructs(a, b, g):
    p, q = a * g, b * g
    if not p or not q:
        return
    d = poly_gcd(p, q)
    assert poly_div(p, d) is not None
    assert poly_div(q, d) is not None
    if g:
        assert poly_div(d, g.monic()) is not None or poly_gcd(a, b) != Polynomial.one


def test_gcd_examples():
    assert poly_gcd(zvar(1) * zvar(2), zvar(1)) == zvar(1)
    p = parse_poly("2*z1^2 + 2*z1")
    assert poly_gcd(p, p) == p.monic()
    q = parse_poly("z5*z8 - z6*z7")
    assert poly_gcd(q, zvar(5)) == Polynomial.one
    # substituting z5 = 0 leaves a nonzero remainder, so z5 cannot divide
    assert q.evaluate({"z5": rat(0), "z6": rat(1), "z7": rat(1), "z8": rat(1)}) != 0


def test_gcd_zero_cases():
    p = parse_poly("3*z1 + 3")
    assert poly_gcd(p, Polynomial.zero) == p.monic()
    assert poly_gcd(Polynomial.zero, p) == p.monic()


def test_rf_normalize_examples():
    f = rf_normalize(zvar(1) ** 2, zvar(1))
    assert f == RationalFunction.var("z1")
    assert rf_normalize(Polynomial.zero, zvar(1)) == RationalFunction.zero
    g = rf_normalize(parse_poly("z1*z2 + z2"), zvar(2))
    assert g == parse_rf("z1 + 1")
    with pytest.raises(ZeroDenominator):
        rf_normalize(zvar(1), Polynomial.zero)


def test_rf_invariants_after_arithmetic():
    rng = random.Random(1)
    a = parse_rf("(z1 + 1)/(z2)")
    b = parse_rf("(z2 - 1)/(z1*z2)")
    for f in (a + b, a * b, a - b, a / b):
        assert poly_gcd(f.num, f.den).is_constant()
        assert f.den.leading_coefficient() == 1


def test_rf_arithmetic_matches_pointwise():
    rng = random.Random(2)
    a = parse_rf("(z1^2 - z2)/(z1 + 2)")
    b = parse_rf("(z2 + 3)/(z1*z2 - 1)")
    combos = [(a + b, lambda x, y: x + y), (a * b, lambda x, y: x * y),
              (a - b, lambda x, y: x - y)]
    done = 0
    while done < 50:
        pt = {"z1": rat(rng.randint(-9, 9)) / rng.randint(1, 9),
              "z2": rat(rng.randint(-9, 9)) / rng.randint(1, 9)}
        try:
            va, vb = a.evaluate(pt), b.evaluate(pt)
            for f, op in combos:
                assert f.evaluate(pt) == op(va, vb)
        except PoleAtPoint:
            continue
        done += 1


def test_evaluate_errors():
    assert parse_rf("z1 + 1").evaluate({"z1": rat(1)}) == 2
    with pytest.raises(PoleAtPoint):
        parse_rf("z1/z2").evaluate({"z1": rat(3), "z2": rat(0)})
    with pytest.raises(MissingVariable):
        parse_rf("z1 + z2").evaluate({"z1": rat(1)})


def test_evaluate_paper_point():
    x2 = parse_poly("-z6*z7 + z5*z8")
    pt = {"z5": rat(1), "z6": rat(1), "z7": rat(1), "z8": rat(2)}
    assert x2.evaluate(pt) == 1


def test_factor_against_pool_examples():
    p = zvar(1) * zvar(4)
    pool_exp, var_exp, rem = factor_against_pool(p, [])
    assert var_exp == {"z1": 1, "z4": 1} and rem.is_constant()

    q = parse_poly("z5*z8 - z6*z7")
    pool_exp, var_exp, rem = factor_against_pool(q, [q])
    assert pool_exp == {0: 1} and not var_exp and rem == Polynomial.one

    r = q * zvar(5) ** 2
    pool_exp, var_exp, rem = factor_against_pool(r, [q])
    assert pool_exp == {0: 1} and var_exp == {"z5": 2} and rem.is_constant()


def test_factor_pool_reconstruction():
    rng = random.Random(3)
    pool = [parse_poly("z1*z2 - 1"), parse_poly("z1 + z3")]
    for _ in range(25):
        expected = Polynomial.const(rng.choice([1, 2, -3]))
        for q in pool:
            expected = expected * q ** rng.randint(0, 2)
        expected = expected * zvar(rng.randint(1, 3)) ** rng.randint(0, 2)
        pool_exp, var_exp, rem = factor_against_pool(expected, pool)
        rebuilt = rem
        for i, e in pool_exp.items():
            rebuilt = rebuilt * pool[i] ** e
        for v, e in var_exp.items():
            rebuilt = rebuilt * Polynomial.variable(v) ** e
        assert rebuilt == expected


def test_print_parse_roundtrip():
    text = "-z6*z7 + z5*z8"
    assert poly_str(parse_poly(text)) == "z5*z8 - z6*z7"
    f = parse_rf("(z1*z2 - 1)/(z1^2)")
    assert parse_rf(rf_str(f)) == f
    assert poly_str(parse_poly("z1^2 - 1/2")) == "z1^2 - 1/2"
    assert rf_str(parse_rf("z1/z2")) == "z1/z2"


def test_parser_rejects_garbage():
    with pytest.raises(ValueError):
        parse_rf("z1 + + ")
    with pytest.raises(ValueError):
        parse_rf("(z1")
    with pytest.raises(ValueError):
        parse_poly("z1/z2")


def test_rational_strings():
    assert rat("3/2") * 2 == 3
    assert rat("-7") == -7
