"""Exact integer arithmetic: primality, factorization and p-adic valuations.

Integers are plain Python ints and rationals are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

# Bases 2..41 make Miller-Rabin deterministic below this bound.
MR_BOUND = 3_317_044_064_679_887_385_961_981
MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

DEFAULT_TRIAL_BOUND = 10**6
DEFAULT_RHO_ITERATIONS = 2_000_000
BUDGET_ENV = "GALOIS2_FACTOR_BUDGET"


class InputRangeError(ValueError):
    """Raised when an integer lies outside the range with a deterministic primality test."""


class FactorizationIncomplete(ArithmeticError):
    """The factoring budget ran out before the cofactor was split into primes."""

    def __init__(self, n: int, cofactor: int, partial: dict[int, int]):
        self.n = n
        self.cofactor = cofactor
        self.partial = dict(partial)
        super().__init__(f"could not finish factoring {n}: unfactored cofactor {cofactor}")


@dataclass(frozen=True)
class FactorBudget:
    trial_bound: int = DEFAULT_TRIAL_BOUND
    rho_iterations: int = DEFAULT_RHO_ITERATIONS

    @classmethod
    def from_env(cls) -> "FactorBudget":
        """Budget with the rho iteration count overridden by ``GALOIS2_FACTOR_BUDGET``."""
        raw = os.environ.get(BUDGET_ENV)
        if not raw:
            return cls()
        return cls(rho_iterations=int(raw))


@dataclass(frozen=True)
class PrimeFactorization:
    unit: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        out = self.unit
        for p, k in self.factors:
            out *= p**k
        return out

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent(self, p: int) -> int:
        for q, k in self.factors:
            if q == p:
                return k
        return 0

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)


def _small_primes(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i in range(limit + 1) if sieve[i]]


_PRIME_CACHE: dict[int, list[int]] = {}


def primes_up_to(limit: int) -> list[int]:
    if limit not in _PRIME_CACHE:
        _PRIME_CACHE[limit] = _small_primes(limit)
    return _PRIME_CACHE[limit]


def is_prime(n: int) -> bool:
    """Deterministic primality test for ``n < MR_BOUND``.

    Raises :class:`InputRangeError` for larger inputs, since a probable-prime
    answer is not acceptable for certificates.
    """
    if n < 2:
        return False
    if n >= MR_BOUND:
        raise InputRangeError(f"{n} exceeds the deterministic primality bound {MR_BOUND}")
    for p in MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int, c: int, max_iter: int) -> tuple[int | None, int]:
    """One Brent-rho run; returns (factor or None, iterations used)."""
    y, r, q, g = 2, 1, 1, 1
    x = ys = y
    used = 0
    m = 128
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        used += r
        r *= 2
        if used > max_iter:
            return None, used
    if g == n:
        # backtrack one step at a time
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    if g == n:
        return None, used
    return g, used


def _split(n: int, budget: list[int]) -> int | None:
    """Find a nontrivial factor of composite odd n, drawing from a shared iteration budget."""
    r = math.isqrt(n)
    if r * r == n:
        return r
    c = 1
    while budget[0] > 0:
        f, used = _brent(n, c, budget[0])
        budget[0] -= used
        if f is not None:
            return f
        c += 1
    return None


def factor(n: int, budget: FactorBudget | None = None) -> PrimeFactorization:
    """Complete prime factorization of a nonzero integer.

    Trial division up to ``budget.trial_bound`` is followed by Brent's rho.
    If the rho budget runs out, :class:`FactorizationIncomplete` is raised.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    budget = budget or FactorBudget.from_env()
    unit = -1 if n < 0 else 1
    m = abs(n)
    found: dict[int, int] = {}

    bound = budget.trial_bound
    # power-of-two limits keep the sieve cache small
    limit = min(bound, 1 << (math.isqrt(m) + 1).bit_length())
    for p in primes_up_to(limit):
        if p * p > m:
            break
        while m % p == 0:
            m //= p
            found[p] = found.get(p, 0) + 1
    if m > 1 and m < bound * bound:
        # no divisor up to sqrt(m)
        found[m] = found.get(m, 0) + 1
        m = 1

    rho_left = [budget.rho_iterations]
    stack = [m] if m > 1 else []
    while stack:
        q = stack.pop()
        try:
            prime = is_prime(q)
        except InputRangeError:
            prime = None
        if prime:
            found[q] = found.get(q, 0) + 1
            continue
        f = _split(q, rho_left)
        if f is None:
            raise FactorizationIncomplete(n, q, found)
        stack.extend((f, q // f))
    return PrimeFactorization(unit, tuple(sorted(found.items())))


def vp(x: int | Fraction, p: int) -> int:
    """Exponent of the prime ``p`` in the nonzero rational ``x``."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    return _vp_int(x.numerator, p) - _vp_int(x.denominator, p)


def _vp_int(n: int, p: int) -> int:
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def v2(n: int) -> int:
    """2-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    return (n & -n).bit_length() - 1


def odd_prime_divisors(n: int, budget: FactorBudget | None = None) -> list[int]:
    return [p for p in factor(n, budget).primes if p != 2]


def divisors(fac: PrimeFactorization) -> list[int]:
    """Positive divisors from a factorization."""
    out = [1]
    for p, k in fac.factors:
        out = [d * p**i for d in out for i in range(k + 1)]
    return sorted(out)
