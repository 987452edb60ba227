"""Exact rational substrate: primality, factorization, valuations, digit expansions.

Rationals are ``fractions.Fraction`` throughout: always reduced, denominator
positive, arbitrary precision.  Every operation here is pure and exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Fraction

RationalLike = Union[Fraction, int]

#: valuation of zero; compares above every integer, absorbs addition
INFINITE = math.inf


class DomainError(ValueError):
    """An argument falls outside an operation's mathematical domain."""


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Witnesses proving primality for every n < 3.3e24, comfortably past 64 bits.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_PRIME_LIMIT = 1 << 64


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n below 2**64; larger n are rejected."""
    if n >= _PRIME_LIMIT:
        raise DomainError(f"primality test limited to 64-bit integers, got {n}")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise DomainError(f"{p} is not prime")
    return p


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| by trial division.  n must be nonzero."""
    if n == 0:
        raise DomainError("0 has no prime factorization")
    n = abs(n)
    factors: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n:
        for p in (d, d + 2):
            while n % p == 0:
                factors[p] = factors.get(p, 0) + 1
                n //= p
        d += 6
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def valuation(x: RationalLike, p: int) -> int | float:
    """p-adic valuation of x: the ``v`` with x = p**v * (a/b), p dividing neither.

    Returns INFINITE for x = 0 (the |0|_p = 0 convention).
    """
    require_prime(p)
    x = Fraction(x)
    if x == 0:
        return INFINITE
    v = 0
    num = x.numerator
    while num % p == 0:
        num //= p
        v += 1
    if v:
        return v
    den = x.denominator
    while den % p == 0:
        den //= p
        v -= 1
    return v


def unit_part(x: RationalLike, p: int) -> Fraction:
    """x / p**valuation(x, p); a p-adic unit.  x must be nonzero."""
    x = Fraction(x)
    if x == 0:
        raise DomainError("0 has no unit part")
    v = valuation(x, p)
    return x / Fraction(p) ** v


def support(x: RationalLike) -> tuple[int, ...]:
    """The finite set of primes p with |x|_p != 1, sorted.  x must be nonzero."""
    x = Fraction(x)
    if x == 0:
        raise DomainError("support undefined for 0")
    primes = set(factorize(x.numerator)) | set(factorize(x.denominator))
    return tuple(sorted(primes))


def parse_rational(token: str) -> Fraction:
    """Parse 'n' or 'n/d' with optional sign; decimals are rejected to keep exactness."""
    text = token.strip()
    num, sep, den = text.partition("/")
    try:
        if not sep:
            return Fraction(int(num))
        value = Fraction(int(num), int(den))
    except ZeroDivisionError:
        raise DomainError(f"zero denominator in {token!r}") from None
    except ValueError:
        raise DomainError(f"{token!r} is not a rational (use n or n/d)") from None
    return value


@dataclass(frozen=True)
class DigitExpansion:
    """Leading digits of the canonical base-p series of a nonzero rational.

    The represented value is p**valuation * sum(digits[k] * p**k); the leading
    digit is never 0, each digit lies in [0, p).
    """

    valuation: int
    digits: tuple[int, ...]
    prime: int
    length: int

    def partial_sum(self) -> Fraction:
        """Exact value of the truncated series."""
        total = sum(d * self.prime**k for k, d in enumerate(self.digits))
        return Fraction(self.prime) ** self.valuation * total


def digit_expansion(x: RationalLike, p: int, n: int) -> DigitExpansion:
    """First n canonical base-p digits of nonzero x.

    The unit part a/b (both prime to p) is resolved modulo p**n by multiplying
    a with the inverse of b, then read off digit by digit.
    """
    require_prime(p)
    x = Fraction(x)
    if x == 0:
        raise DomainError("0 has no canonical digit expansion")
    if n < 1:
        raise DomainError("digit count must be positive")
    v = valuation(x, p)
    u = x / Fraction(p) ** v
    modulus = p**n
    residue = u.numerator * pow(u.denominator, -1, modulus) % modulus
    digits = []
    for _ in range(n):
        residue, d = divmod(residue, p)
        digits.append(d)
    return DigitExpansion(valuation=int(v), digits=tuple(digits), prime=p, length=n)
