"""Quadratic symbols and the eighth-root factors attached to squares.

Holds the Legendre symbol, the local Hilbert symbol in closed form, the Weil
index at every place, and the exact three-part value algebra (eighth root x
half-integer magnitude x root of unity) that adelic product checks combine in.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .local import Place, RootOfUnity, places_for
from .rational import (
    DomainError,
    RationalLike,
    digit_expansion,
    require_prime,
    unit_part,
    valuation,
)


@dataclass(frozen=True)
class EighthRoot:
    """Exact eighth root of unity exp(i*pi*k/4), k taken mod 8."""

    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "k", self.k % 8)

    @classmethod
    def one(cls) -> "EighthRoot":
        return cls(0)

    @property
    def is_one(self) -> bool:
        return self.k == 0

    def __mul__(self, other: "EighthRoot") -> "EighthRoot":
        return EighthRoot(self.k + other.k)

    def inverse(self) -> "EighthRoot":
        return EighthRoot(-self.k)

    def as_root_of_unity(self) -> RootOfUnity:
        return RootOfUnity(Fraction(self.k, 8))

    def to_complex(self) -> complex:
        return cmath.exp(1j * cmath.pi * self.k / 4)

    def __str__(self) -> str:
        return "1" if self.k == 0 else f"exp(i*pi*{self.k}/4)"


def _sqrt_exact(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class ExactFactor:
    """Exact value of one local factor: eighth root x sqrt(mag2) x root of unity.

    mag2 is the squared magnitude, a positive rational, so products of
    half-integer powers of rationals stay exactly representable.
    """

    root: EighthRoot
    mag2: Fraction
    phase: RootOfUnity

    def __post_init__(self) -> None:
        object.__setattr__(self, "mag2", Fraction(self.mag2))
        if self.mag2 <= 0:
            raise DomainError("factor magnitude must be positive")

    @classmethod
    def identity(cls) -> "ExactFactor":
        return cls(EighthRoot.one(), Fraction(1), RootOfUnity.one())

    @classmethod
    def from_magnitude(cls, m: RationalLike) -> "ExactFactor":
        m = Fraction(m)
        return cls(EighthRoot.one(), m * m, RootOfUnity.one())

    @classmethod
    def from_phase(cls, phase: RootOfUnity) -> "ExactFactor":
        return cls(EighthRoot.one(), Fraction(1), phase)

    @classmethod
    def from_root(cls, root: EighthRoot) -> "ExactFactor":
        return cls(root, Fraction(1), RootOfUnity.one())

    @classmethod
    def from_sign(cls, sign: int) -> "ExactFactor":
        if sign not in (1, -1):
            raise DomainError(f"sign factor must be +1 or -1, got {sign}")
        return cls(EighthRoot(0 if sign == 1 else 4), Fraction(1), RootOfUnity.one())

    @property
    def is_identity(self) -> bool:
        return self.root.is_one and self.mag2 == 1 and self.phase.is_one

    def __mul__(self, other: "ExactFactor") -> "ExactFactor":
        return ExactFactor(self.root * other.root, self.mag2 * other.mag2, self.phase * other.phase)

    def inverse(self) -> "ExactFactor":
        return ExactFactor(self.root.inverse(), 1 / self.mag2, self.phase.inverse())

    def to_complex(self) -> complex:
        return self.root.to_complex() * math.sqrt(float(self.mag2)) * self.phase.to_complex()

    def __str__(self) -> str:
        parts = []
        if not self.root.is_one:
            parts.append(str(self.root))
        if self.mag2 != 1:
            m = _sqrt_exact(self.mag2)
            parts.append(str(m) if m is not None else f"sqrt({self.mag2})")
        if not self.phase.is_one:
            parts.append(str(self.phase))
        return "*".join(parts) if parts else "1"


def legendre_symbol(a: int, p: int) -> int:
    """Quadratic residue symbol mod an odd prime, by Euler's criterion."""
    require_prime(p)
    if p == 2:
        raise DomainError("Legendre symbol requires an odd prime")
    a %= p
    if a == 0:
        return 0
    e = pow(a, (p - 1) // 2, p)
    return 1 if e == 1 else -1


def _legendre_of_unit(u: Fraction, p: int) -> int:
    # (num/den / p) = (num/p)(den/p) since the symbol is multiplicative and
    # squares drop out; u is a p-adic unit, so neither part vanishes.
    return legendre_symbol(u.numerator % p, p) * legendre_symbol(u.denominator % p, p)


def _unit_mod8(u: Fraction) -> int:
    # u a 2-adic unit: odd/odd; resolve modulo 8
    return u.numerator * pow(u.denominator, -1, 8) % 8


def hilbert_symbol(x: RationalLike, y: RationalLike, place: Place) -> int:
    """Local Hilbert symbol: +1 iff z**2 = x*u**2 + y*w**2 has a nonzero local solution.

    Archimedean place: -1 exactly when both arguments are negative.  Finite
    places use the classical closed form in the valuations and unit parts; the
    test suite ties it to a solvability search, so the formula never stands
    alone.
    """
    x = Fraction(x)
    y = Fraction(y)
    if x == 0 or y == 0:
        raise DomainError("Hilbert symbol requires nonzero arguments")
    if place.is_infinite:
        return -1 if (x < 0 and y < 0) else 1
    p = place.prime
    alpha = int(valuation(x, p))
    beta = int(valuation(y, p))
    u = unit_part(x, p)
    w = unit_part(y, p)
    if p != 2:
        eps = (p - 1) // 2
        sign = -1 if (alpha * beta * eps) % 2 else 1
        if beta % 2:
            sign *= _legendre_of_unit(u, p)
        if alpha % 2:
            sign *= _legendre_of_unit(w, p)
        return sign
    u8 = _unit_mod8(u)
    w8 = _unit_mod8(w)
    eps_u = (u8 - 1) // 2 % 2
    eps_w = (w8 - 1) // 2 % 2
    omega_u = (u8 * u8 - 1) // 8 % 2
    omega_w = (w8 * w8 - 1) // 8 % 2
    exponent = eps_u * eps_w + alpha * omega_w + beta * omega_u
    return -1 if exponent % 2 else 1


def weil_index(x: RationalLike, place: Place) -> EighthRoot:
    """Eighth-root factor of the local quadratic Gauss integral at x.

    Archimedean: exp(-i*pi/4 * sign(x)).  Odd p: 1 for even valuation; for odd
    valuation the quadratic-Gauss-sum phase (1 for p = 1 mod 4, i for p = 3
    mod 4) times the residue symbol of the leading digit.  p = 2 depends on
    the second and third digits of the unit part; the branches are pinned by
    the requirement that the product over all places is exactly 1, and are
    cross-checked numerically against ball sums of the defining integral.
    """
    x = Fraction(x)
    if x == 0:
        raise DomainError("Weil index undefined at 0")
    if place.is_infinite:
        return EighthRoot(-1 if x > 0 else 1)
    p = place.prime
    v = int(valuation(x, p))
    if p != 2:
        if v % 2 == 0:
            return EighthRoot.one()
        exp = digit_expansion(x, p, 1)
        k = 0 if p % 4 == 1 else 2
        if legendre_symbol(exp.digits[0], p) == -1:
            k += 4
        return EighthRoot(k)
    exp = digit_expansion(x, 2, 3)
    x1, x2 = exp.digits[1], exp.digits[2]
    if v % 2 == 0:
        return EighthRoot(1 - 2 * x1)
    return EighthRoot(1 + 2 * x1 + 4 * x2)


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of an exact product check with its per-place factor table."""

    ok: bool
    factors: tuple[tuple[Place, object], ...]
    detail: str = ""

    def factor_at(self, place: Place) -> object:
        for v, value in self.factors:
            if v == place:
                return value
        raise KeyError(str(place))


def verify_lambda_product(x: RationalLike) -> IdentityCheck:
    """Check that the Weil indices of x over all places multiply to exactly 1.

    Only the archimedean place, 2, and primes dividing x can contribute; the
    check is that the eighth-root exponents sum to 0 mod 8.
    """
    x = Fraction(x)
    if x == 0:
        raise DomainError("product requires a nonzero rational")
    table = []
    total = 0
    for place in places_for(x, always=(2,)):
        w = weil_index(x, place)
        total += w.k
        table.append((place, w))
    return IdentityCheck(total % 8 == 0, tuple(table), detail=f"exponent sum {total} mod 8")


def verify_hilbert_product(x: RationalLike, y: RationalLike) -> IdentityCheck:
    """Check that the Hilbert symbols of (x, y) over all places multiply to +1."""
    x = Fraction(x)
    y = Fraction(y)
    if x == 0 or y == 0:
        raise DomainError("product requires nonzero rationals")
    table = []
    prod = 1
    for place in places_for(x, y, always=(2,)):
        s = hilbert_symbol(x, y, place)
        prod *= s
        table.append((place, s))
    return IdentityCheck(prod == 1, tuple(table), detail=f"product {prod}")
