import random
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from galois2.poly import (
    IntPoly,
    discriminant,
    format_poly,
    gcd,
    irreducibility_witness,
    irreducible_mod_p,
    is_squarefree,
    parse_poly,
    prem,
    resultant,
)

coeff_lists = st.lists(st.integers(-20, 20), min_size=1, max_size=6)


def sylvester_det(a, b):
    m, n = a.degree, b.degree
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(reversed(a.coeffs)) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(reversed(b.coeffs)) + [0] * (size - n - 1 - i))
    return int(sympy.Matrix(rows).det())


def root_product_disc(roots):
    out = 1
    for a, b in combinations(roots, 2):
        out *= (a - b) ** 2
    return out


@pytest.mark.parametrize(
    "text, disc",
    [("x^2-1", 4), ("x^3-2", -108), ("x^4+x+1", 229), ("x^2+1", -4), ("x^3-7x^2+6x", 900)],
)
def test_discriminant_examples(text, disc):
    assert discriminant(parse_poly(text)) == disc


def test_discriminant_cubic_formula():
    # -4p^3 - 27q^2 for x^3 + px + q
    for p in range(-5, 6):
        for q in range(-5, 6):
            assert discriminant(IntPoly([q, p, 0, 1])) == -4 * p**3 - 27 * q**2


def test_discriminant_quartic_formula():
    # -27c^4 + 256d^3 for x^4 + cx + d
    for c in range(-4, 5):
        for d in range(-4, 5):
            assert discriminant(IntPoly([d, c, 0, 0, 1])) == -27 * c**4 + 256 * d**3


@given(st.lists(st.integers(-30, 30), min_size=2, max_size=6))
def test_discriminant_is_root_product(roots):
    assert discriminant(IntPoly.from_roots(roots)) == root_product_disc(roots)


@given(st.lists(st.integers(-30, 30), min_size=2, max_size=6), st.integers(-50, 50))
def test_discriminant_translation_invariant(roots, c):
    f = IntPoly.from_roots(roots) + IntPoly([1])
    assert discriminant(f.shift(c)) == discriminant(f)


@given(coeff_lists, coeff_lists)
@settings(max_examples=300)
def test_resultant_matches_sylvester(a, b):
    f, g = IntPoly(a), IntPoly(b)
    if f.is_zero or g.is_zero or f.degree < 1 or g.degree < 1:
        return
    assert resultant(f, g) == sylvester_det(f, g)


@given(st.lists(st.integers(-10, 10), min_size=1, max_size=5))
def test_squarefree_iff_nonzero_disc(roots):
    f = IntPoly.from_roots(roots)
    if f.degree < 2:
        return
    assert is_squarefree(f) == (discriminant(f) != 0) == (len(set(roots)) == len(roots))


def test_gcd_against_sympy():
    x = sympy.Symbol("x")
    rng = random.Random(7)
    for _ in range(50):
        common = IntPoly.from_roots([rng.randint(-5, 5) for _ in range(rng.randint(0, 2))])
        a = common * IntPoly([rng.randint(-5, 5) for _ in range(3)] + [1])
        b = common * IntPoly([rng.randint(-5, 5) for _ in range(2)] + [1])
        ours = gcd(a, b)
        theirs = sympy.Poly(sympy.gcd(sympy.Poly(list(reversed(a.coeffs)), x), sympy.Poly(list(reversed(b.coeffs)), x)), x)
        assert ours.degree == theirs.degree()


def test_prem_identity():
    a, b = parse_poly("3x^4 + x - 7"), parse_poly("2x^2 + 1")
    r = prem(a, b)
    assert r.degree < b.degree
    # lc(b)^(deg a - deg b + 1) * a - r is divisible by b
    q_num = a * (b.lc ** 3) - r
    x = sympy.Symbol("x")
    _, rem = sympy.div(sympy.Poly(list(reversed(q_num.coeffs)), x), sympy.Poly(list(reversed(b.coeffs)), x))
    assert rem.is_zero


@pytest.mark.parametrize(
    "text, coeffs",
    [
        ("x^3-2", (-2, 0, 0, 1)),
        ("x**4 + x + 1", (1, 1, 0, 0, 1)),
        ("2*x^2 - 3x + 5", (5, -3, 2)),
        ("[-2, 0, 0, 1]", (-2, 0, 0, 1)),
        ("x^2 − 1", (-1, 0, 1)),
        ("-x", (0, -1)),
    ],
)
def test_parse(text, coeffs):
    assert parse_poly(text).coeffs == coeffs


@pytest.mark.parametrize("bad", ["", "x^", "x^3--2", "y+1", "[1.5, 2]", "x^2+*3"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_poly(bad)


@given(coeff_lists)
def test_format_round_trip(c):
    f = IntPoly(c)
    assert parse_poly(format_poly(f)) == f if not f.is_zero else format_poly(f) == "0"


def test_evaluate_big():
    f = parse_poly("x^3-2")
    assert f(10**30) == 10**90 - 2


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_irreducible_mod_p_against_sympy(p):
    x = sympy.Symbol("x")
    rng = random.Random(p)
    for _ in range(40):
        c = [rng.randrange(p) for _ in range(rng.randint(2, 5))] + [1]
        f = IntPoly(c)
        expected = sympy.Poly(list(reversed(c)), x, modulus=p).is_irreducible
        assert irreducible_mod_p(f, p) == expected


def test_irreducibility_witness_examples():
    assert irreducibility_witness(parse_poly("x^4+x+1")).proven
    assert irreducibility_witness(parse_poly("x^3-2")).proven
    v = irreducibility_witness(parse_poly("x^2-1"))
    assert v.disproven and v.factor is not None


def test_irreducibility_witness_against_sympy():
    x = sympy.Symbol("x")
    rng = random.Random(99)
    for _ in range(60):
        c = [rng.randint(-9, 9) for _ in range(rng.randint(2, 6))] + [1]
        verdict = irreducibility_witness(IntPoly(c))
        truth = sympy.Poly(list(reversed(c)), x).is_irreducible
        if verdict.proven:
            assert truth
        if verdict.disproven:
            assert not truth


def test_unknown_for_swinnerton_dyer_like():
    # x^4 - 10x^2 + 1 is irreducible but reducible mod every prime
    assert irreducibility_witness(parse_poly("x^4-10x^2+1")).kind == "Unknown"
