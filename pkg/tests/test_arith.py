import random

import pytest
import sympy
from fractions import Fraction
from hypothesis import given, settings
from hypothesis import strategies as st

from galois2.arith import (
    MR_BOUND,
    FactorBudget,
    FactorizationIncomplete,
    InputRangeError,
    divisors,
    factor,
    is_prime,
    primes_up_to,
    v2,
    vp,
)


def sieve(n):
    flags = [True] * (n + 1)
    flags[0] = flags[1] = False
    for i in range(2, int(n**0.5) + 1):
        if flags[i]:
            for j in range(i * i, n + 1, i):
                flags[j] = False
    return flags


def test_is_prime_matches_sieve_below_1e6():
    flags = sieve(10**6)
    assert all(is_prime(n) == flags[n] for n in range(10**6 + 1))


def test_primes_up_to():
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize(
    "n, expected",
    [
        (2**61 - 1, True),
        (3215031751, False),  # strong pseudoprime to bases 2, 3, 5, 7
        (3825123056546413051, False),
        (318665857834031151167461, False),
        (MR_BOUND - 2, sympy.isprime(MR_BOUND - 2)),
    ],
)
def test_is_prime_hard_cases(n, expected):
    assert is_prime(n) is expected


def test_is_prime_out_of_range():
    with pytest.raises(InputRangeError):
        is_prime(MR_BOUND + 1)


@given(st.integers(min_value=2, max_value=10**18))
@settings(max_examples=300)
def test_is_prime_agrees_with_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


def test_factor_round_trip_random():
    rng = random.Random(1234)
    for _ in range(1000):
        n = rng.randrange(1, 10**12) * rng.choice([1, -1])
        fac = factor(n)
        assert fac.value() == n
        assert all(sympy.isprime(p) and k >= 1 for p, k in fac)
        assert list(fac.primes) == sorted(fac.primes)


@pytest.mark.parametrize(
    "n, expected",
    [
        (1, ()),
        (-1, ()),
        (25, ((5, 2),)),
        (-216, ((2, 3), (3, 3))),
        (2**64, ((2, 64),)),
        ((10**9 + 7) * (10**9 + 9), ((10**9 + 7, 1), (10**9 + 9, 1))),
        ((2**31 - 1) ** 2, ((2**31 - 1, 2),)),
    ],
)
def test_factor_examples(n, expected):
    assert factor(n).factors == expected


def test_factor_semiprime_beyond_trial_division():
    p, q = 1000000007, 998244353
    assert factor(p * q * 12).factors == ((2, 2), (3, 1), (q, 1), (p, 1))


def test_factor_budget_exhaustion():
    n = (2**61 - 1) * (2**89 - 1)
    with pytest.raises(FactorizationIncomplete) as info:
        factor(n, FactorBudget(rho_iterations=10))
    assert info.value.cofactor > 1


def test_budget_from_env(monkeypatch):
    monkeypatch.setenv("GALOIS2_FACTOR_BUDGET", "77")
    assert FactorBudget.from_env().rho_iterations == 77
    monkeypatch.delenv("GALOIS2_FACTOR_BUDGET")
    assert FactorBudget.from_env() == FactorBudget()


def test_factor_zero():
    with pytest.raises(ValueError):
        factor(0)


@given(st.integers(min_value=-10**9, max_value=10**9).filter(bool), st.integers(-10**9, 10**9).filter(bool))
def test_vp_is_additive(a, b):
    for p in (2, 3, 5):
        assert vp(a * b, p) == vp(a, p) + vp(b, p)
        assert vp(Fraction(a, b), p) == vp(a, p) - vp(b, p)


@given(st.integers(min_value=1, max_value=10**12))
def test_v2_matches_vp(n):
    assert v2(n) == vp(n, 2) == v2(-n)


def test_valuation_of_zero():
    with pytest.raises(ValueError):
        vp(0, 3)
    with pytest.raises(ValueError):
        v2(0)


@pytest.mark.parametrize("n", [1, 12, 360, 97, 1024])
def test_divisors(n):
    assert divisors(factor(n)) == sympy.divisors(n)
