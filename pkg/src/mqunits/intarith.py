"""Exact integer and rational primitives used by every other module.

Everything here is pure and deterministic: a grow-on-demand prime sieve,
squarefree decomposition, perfect-square testing, the Kronecker symbol, and
adaptive rational bracketing of square roots for exact sign determination.
No floating point anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

_primes: list[int] = [2, 3, 5, 7, 11, 13]
_sieve_limit = 13


def primes_upto(n: int) -> list[int]:
    """Return all primes <= n (cached sieve, grown as needed)."""
    global _primes, _sieve_limit
    if n > _sieve_limit:
        limit = max(2 * _sieve_limit, n, 1024)
        sieve = bytearray([1]) * (limit + 1)
        sieve[0] = sieve[1] = 0
        for p in range(2, math.isqrt(limit) + 1):
            if sieve[p]:
                sieve[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
        _primes = [i for i in range(limit + 1) if sieve[i]]
        _sieve_limit = limit
    if n >= _sieve_limit:
        return list(_primes)
    # bisect by hand to avoid importing for one call site
    lo, hi = 0, len(_primes)
    while lo < hi:
        mid = (lo + hi) // 2
        if _primes[mid] <= n:
            lo = mid + 1
        else:
            hi = mid
    return _primes[:lo]


def is_prime(n: int) -> bool:
    """Trial-division primality test, adequate for the scan ranges used here."""
    if n < 2:
        return False
    for p in primes_upto(math.isqrt(n)):
        if n % p == 0:
            return n == p
    return True


def is_perfect_square(n: int) -> tuple[bool, int | None]:
    """Return (True, k) with k*k == n, or (False, None). Negative n is never a square."""
    if n < 0:
        return False, None
    k = math.isqrt(n)
    if k * k == n:
        return True, k
    return False, None


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n = s * f**2 with s squarefree and sign(s) = sign(n).

    Trial division only up to the cube root: the undivided remainder then has
    at most two prime factors, so it is 1, p, p**2 or p*q, and a single
    perfect-square test finishes the job.
    """
    if n == 0:
        raise ValueError("0 has no squarefree decomposition")
    sign = 1 if n > 0 else -1
    m = abs(n)
    s, f = 1, 1
    for p in primes_upto(round(m ** (1.0 / 3.0)) + 2):
        if p * p > m:
            break
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e & 1:
            s *= p
        f *= p ** (e >> 1)
    square, root = is_perfect_square(m)
    if square:
        f *= root
    else:
        s *= m
    return sign * s, f


def is_squarefree(n: int) -> bool:
    return n != 0 and squarefree_decompose(n)[1] == 1


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a/n), the full multiplicative extension of Legendre's."""
    if n == 0:
        raise ValueError("Kronecker symbol needs a nonzero modulus")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    # peel off the even part of n
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t:
        if a % 2 == 0:
            return 0
        if t & 1 and a % 8 in (3, 5):
            result = -result
    # Jacobi loop on the odd part
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@dataclass(frozen=True)
class RationalInterval:
    """A closed interval [lo, hi] with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("interval endpoints out of order")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def __add__(self, other: "RationalInterval") -> "RationalInterval":
        return RationalInterval(self.lo + other.lo, self.hi + other.hi)

    def scaled(self, c: Fraction) -> "RationalInterval":
        """The interval c*[lo, hi]; endpoints swap when c < 0."""
        if c >= 0:
            return RationalInterval(c * self.lo, c * self.hi)
        return RationalInterval(c * self.hi, c * self.lo)

    @staticmethod
    def point(x) -> "RationalInterval":
        x = Fraction(x)
        return RationalInterval(x, x)


@lru_cache(maxsize=None)
def _sqrt_bracket(n: int, digits: int) -> RationalInterval:
    scale = 10**digits
    target = n * scale * scale
    r = math.isqrt(target)
    if r * r == target:
        exact = Fraction(r, scale)
        return RationalInterval(exact, exact)
    return RationalInterval(Fraction(r, scale), Fraction(r + 1, scale))


def sqrt_interval(n: int, eps) -> RationalInterval:
    """Bracket sqrt(n) by rationals: lo**2 <= n <= hi**2 with hi - lo <= eps.

    Deterministic precision ladder (8, 16, 32, ... digits), so shrinking eps
    always yields an interval nested inside the previous one.
    """
    if n <= 0:
        raise ValueError("sqrt_interval needs a positive integer")
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    digits = 8
    while True:
        iv = _sqrt_bracket(n, digits)
        if iv.width <= eps:
            return iv
        digits *= 2
