"""Local data at each place of the rationals.

A place is either the archimedean absolute value or a prime p.  Characters
take values in an exact root-of-unity type so that product identities can be
checked by literal equality instead of floating point.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .rational import (
    DomainError,
    RationalLike,
    factorize,
    require_prime,
    support,
    valuation,
)


@dataclass(frozen=True, order=False)
class Place:
    """The archimedean place (prime=None) or a finite place at a prime."""

    prime: int | None

    def __post_init__(self) -> None:
        if self.prime is not None:
            require_prime(self.prime)

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls(p)

    @property
    def is_infinite(self) -> bool:
        return self.prime is None

    def sort_key(self) -> tuple[int, int]:
        # archimedean place first, then primes in order
        return (0, 0) if self.prime is None else (1, self.prime)

    def __str__(self) -> str:
        return "inf" if self.prime is None else str(self.prime)


INFINITY_PLACE = Place.infinity()


def parse_place(token: str) -> Place:
    """Parse 'inf' or a prime written in decimal."""
    if token.strip().lower() in ("inf", "infinity", "oo"):
        return INFINITY_PLACE
    try:
        p = int(token)
    except ValueError:
        raise DomainError(f"place must be 'inf' or a prime, got {token!r}") from None
    require_prime(p)
    return Place.finite(p)


def places_for(*rationals: RationalLike, always: tuple[int, ...] = ()) -> tuple[Place, ...]:
    """Archimedean place plus the union of supports of the nonzero arguments."""
    primes = set(always)
    for x in rationals:
        x = Fraction(x)
        if x != 0:
            primes.update(support(x))
    return (INFINITY_PLACE,) + tuple(Place.finite(p) for p in sorted(primes))


def denominator_places(*rationals: RationalLike) -> set[int]:
    """Primes dividing any denominator: exactly where fractional parts are nonzero.

    Cheaper than full support when numerators are large, and sufficient for
    character factors, which are trivial at nonnegative valuation.
    """
    primes: set[int] = set()
    for x in rationals:
        den = Fraction(x).denominator
        if den > 1:
            primes.update(factorize(den))
    return primes


@dataclass(frozen=True)
class RootOfUnity:
    """Exact point exp(2*pi*i*phase) on the unit circle, phase rational in [0,1).

    The group law is exact phase addition mod 1.  The complex rendering is for
    display only and must never be used for comparisons.
    """

    phase: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "phase", Fraction(self.phase) % 1)

    @classmethod
    def one(cls) -> "RootOfUnity":
        return cls(Fraction(0))

    @property
    def is_one(self) -> bool:
        return self.phase == 0

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity(self.phase + other.phase)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(-self.phase)

    def __pow__(self, n: int) -> "RootOfUnity":
        return RootOfUnity(self.phase * n)

    def to_complex(self) -> complex:
        return cmath.exp(2j * cmath.pi * float(self.phase))

    def __str__(self) -> str:
        return "1" if self.phase == 0 else f"e(2pi*i*{self.phase})"


def local_abs(x: RationalLike, place: Place) -> Fraction:
    """|x| at the given place, as an exact nonnegative rational.

    At a finite place this is p**(-valuation); at the archimedean place the
    ordinary absolute value.  |0| = 0 everywhere.
    """
    x = Fraction(x)
    if place.is_infinite:
        return abs(x)
    if x == 0:
        return Fraction(0)
    v = valuation(x, place.prime)
    return Fraction(place.prime) ** (-int(v))


def frac_part(x: RationalLike, p: int) -> Fraction:
    """p-adic fractional part: the tail of the canonical expansion below p**0.

    A rational in [0, 1) whose denominator is a power of p; zero exactly when
    x is a p-adic integer.  x - frac_part(x, p) always has valuation >= 0.
    """
    require_prime(p)
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    v = valuation(x, p)
    if v >= 0:
        return Fraction(0)
    q = p ** (-int(v))
    # unit part resolved mod p**(-v): x = num/(den*q) with den prime to p
    num = x.numerator
    den = x.denominator // q
    residue = num * pow(den, -1, q) % q
    return Fraction(residue, q)


def additive_character(x: RationalLike, place: Place) -> RootOfUnity:
    """Standard additive character: exp(-2*pi*i*x) at infinity, exp(2*pi*i*{x}_p) at p."""
    x = Fraction(x)
    if place.is_infinite:
        return RootOfUnity(-x)
    return RootOfUnity(frac_part(x, place.prime))


def integer_indicator(x: RationalLike, p: int) -> int:
    """1 if |x|_p <= 1 (x lies in the p-adic integers, including 0), else 0."""
    require_prime(p)
    x = Fraction(x)
    if x == 0:
        return 1
    return 1 if valuation(x, p) >= 0 else 0


@dataclass(frozen=True)
class AdeleCheck:
    valid: bool
    violations: tuple[int, ...]


@dataclass(frozen=True)
class FiniteAdele:
    """Finite-support model of an adele with rational components.

    Components at primes outside ``exceptional`` default to the real component
    read inside the p-adic integers; listed primes may carry any rational.
    A principal adele is the constant sequence: empty exceptional map.
    """

    real_component: Fraction
    exceptional: tuple[tuple[int, Fraction], ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "real_component", Fraction(self.real_component))
        entries = tuple(
            (require_prime(p), Fraction(value)) for p, value in sorted(self.exceptional)
        )
        object.__setattr__(self, "exceptional", entries)

    @classmethod
    def principal(cls, x: RationalLike) -> "FiniteAdele":
        return cls(Fraction(x))

    @classmethod
    def with_exceptions(cls, x: RationalLike, primes: Mapping[int, RationalLike] | tuple[int, ...]) -> "FiniteAdele":
        if isinstance(primes, Mapping):
            entries = tuple((p, Fraction(v)) for p, v in primes.items())
        else:
            x = Fraction(x)
            entries = tuple((p, x) for p in primes)
        return cls(Fraction(x), entries)

    @property
    def exceptional_primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.exceptional)

    def component(self, place: Place) -> Fraction:
        if place.is_infinite:
            return self.real_component
        for p, value in self.exceptional:
            if p == place.prime:
                return value
        return self.real_component

    def is_valid(self) -> AdeleCheck:
        """Check that every component outside the exceptional set is a p-adic integer."""
        x = self.real_component
        if x == 0 or x.denominator == 1:
            return AdeleCheck(True, ())
        listed = set(self.exceptional_primes)
        bad = tuple(
            p for p in support(x)
            if p not in listed and valuation(x, p) < 0
        )
        return AdeleCheck(not bad, bad)
