"""Closed-form local quadratic Gauss integrals, propagator kernels, vacuum states.

The local integral of the character of a*x**2 + b*x over a completion of the
rationals has the exact closed form

    weil_index(a) * |2a|**(-1/2) * character(-b**2/(4a)),

a three-part value (eighth root, half-integer power of a rational, root of
unity).  Everything here is assembled from those exact parts; a brute-force
ball-sum oracle provides the independent numerical route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy.integrate import quad

from .local import (
    Place,
    RootOfUnity,
    additive_character,
    denominator_places,
    integer_indicator,
    local_abs,
    places_for,
)
from .rational import DomainError, RationalLike, require_prime, support, valuation
from .symbols import EighthRoot, ExactFactor, weil_index

_CHUNK = 1 << 20
_MAX_ORACLE_MODULUS = 1 << 26


@dataclass(frozen=True)
class GaussFactor:
    """Exact local value weil_index(a) * mag_base**(-1/2) * phase, mag_base = |2a|."""

    root: EighthRoot
    mag_base: Fraction
    phase: RootOfUnity

    def exact(self) -> ExactFactor:
        return ExactFactor(self.root, 1 / self.mag_base, self.phase)

    def to_complex(self) -> complex:
        return self.exact().to_complex()

    def __str__(self) -> str:
        return f"{self.root} * ({self.mag_base})^(-1/2) * {self.phase}"


@dataclass(frozen=True)
class KernelValue:
    """Exact local propagator value; same three-part shape with mag_base = |4T|."""

    root: EighthRoot
    mag_base: Fraction
    phase: RootOfUnity

    def exact(self) -> ExactFactor:
        return ExactFactor(self.root, 1 / self.mag_base, self.phase)

    def to_complex(self) -> complex:
        return self.exact().to_complex()

    def __str__(self) -> str:
        return f"{self.root} * ({self.mag_base})^(-1/2) * {self.phase}"


def gauss_factor(a: RationalLike, b: RationalLike, place: Place) -> GaussFactor:
    """Closed form of the local Gauss integral with quadratic coefficient a != 0."""
    a = Fraction(a)
    b = Fraction(b)
    if a == 0:
        raise DomainError("quadratic coefficient must be nonzero")
    return GaussFactor(
        root=weil_index(a, place),
        mag_base=local_abs(2 * a, place),
        phase=additive_character(-b * b / (4 * a), place),
    )


@dataclass(frozen=True)
class ProductCheck:
    """Exact product verification: combined factor plus per-place table."""

    ok: bool
    factors: tuple[tuple[Place, object], ...]
    combined: ExactFactor

    def factor_at(self, place: Place) -> object:
        for v, value in self.factors:
            if v == place:
                return value
        raise KeyError(str(place))

    @property
    def detail(self) -> str:
        c = self.combined
        return f"root exponent {c.root.k} mod 8, |.|^2 {c.mag2}, phase {c.phase.phase}"


def _check_product(places: tuple[Place, ...], factor_of: Callable[[Place], object]) -> ProductCheck:
    table = []
    combined = ExactFactor.identity()
    for place in places:
        f = factor_of(place)
        combined = combined * f.exact()
        table.append((place, f))
    return ProductCheck(combined.is_identity, tuple(table), combined)


def verify_gauss_product(a: RationalLike, b: RationalLike) -> ProductCheck:
    """Product of local Gauss integrals over all places; must combine to exactly 1.

    Places outside the archimedean one, 2, and the supports of a and b
    contribute the identity, so the product is finite.
    """
    a = Fraction(a)
    b = Fraction(b)
    if a == 0:
        raise DomainError("quadratic coefficient must be nonzero")
    places = places_for(a, b, always=(2,))
    return _check_product(places, lambda v: gauss_factor(a, b, v))


def padic_gauss_oracle(a: RationalLike, b: RationalLike, p: int, n_ball: int) -> complex:
    """Brute-force finite-volume value of the local Gauss integral at a prime.

    Sums the character of a*t**2 + b*t over cosets of the ball of radius
    p**n_ball (elements of valuation >= -n_ball), with the coset refinement
    taken fine enough that the integrand is constant on each coset.  The sum
    over representatives t = n / p**n_ball is periodic in n, so it is
    collapsed to one exact period before evaluation; the value is unchanged.
    Independent of the closed form: only character values are summed.
    """
    require_prime(p)
    a = Fraction(a)
    b = Fraction(b)
    if a == 0:
        raise DomainError("quadratic coefficient must be nonzero")
    if n_ball < 0:
        raise DomainError("ball exponent must be nonnegative")
    if n_ball > 12:
        raise DomainError("ball exponent above 12 rejected (cost guard)")
    va = int(valuation(a, p))
    period_exp = max(0, 2 * n_ball - va)
    if b != 0:
        period_exp = max(period_exp, n_ball - int(valuation(b, p)))
    modulus = p**period_exp
    if modulus > _MAX_ORACLE_MODULUS:
        raise DomainError(
            f"oracle would sum over {modulus} cosets; reduce the ball or valuations (cost guard)"
        )
    # residues of a/p**(2N) and b/p**N rescaled to denominator modulus
    c2 = _scaled_residue(a, p, period_exp - 2 * n_ball, modulus)
    c1 = _scaled_residue(b, p, period_exp - n_ball, modulus) if b != 0 else 0
    total = 0j
    for start in range(0, modulus, _CHUNK):
        n = np.arange(start, min(start + _CHUNK, modulus), dtype=np.int64)
        t = (c2 * (n * n % modulus) + c1 * n) % modulus
        total += np.exp(2j * np.pi * (t / modulus)).sum()
    return complex(p**n_ball / modulus * total)


def _scaled_residue(x: Fraction, p: int, shift: int, modulus: int) -> int:
    # residue of x * p**shift mod modulus; the shift makes the value p-integral
    scaled = x * Fraction(p) ** shift
    return scaled.numerator * pow(scaled.denominator, -1, modulus) % modulus


def kernel_phase_argument(
    x_out: RationalLike, x_in: RationalLike, accel: RationalLike, duration: RationalLike
) -> Fraction:
    """Exact rational argument of the character inside the propagator kernel."""
    T = Fraction(duration)
    if T == 0:
        raise DomainError("propagation time must be nonzero")
    lam = Fraction(accel)
    x2 = Fraction(x_out)
    x1 = Fraction(x_in)
    return (
        -(lam**2) * T**3 / 24
        + (lam * (x2 + x1) - 2) * T / 4
        + (x2 - x1) ** 2 / (8 * T)
    )


def kernel(
    x_out: RationalLike,
    x_in: RationalLike,
    accel: RationalLike,
    duration: RationalLike,
    place: Place,
) -> KernelValue:
    """Local evolution kernel for the constant-acceleration quadratic model.

    Exact three-part value: weil_index(-8T) * |4T|**(-1/2) * character of the
    cubic-in-T phase polynomial, all in rational arithmetic.
    """
    T = Fraction(duration)
    if T == 0:
        raise DomainError("propagation time must be nonzero")
    return KernelValue(
        root=weil_index(-8 * T, place),
        mag_base=local_abs(4 * T, place),
        phase=additive_character(kernel_phase_argument(x_out, x_in, accel, T), place),
    )


def kernel_places(
    x_out: RationalLike, x_in: RationalLike, accel: RationalLike, duration: RationalLike
) -> tuple[Place, ...]:
    """Finite place set outside which every kernel factor is exactly 1.

    The root and magnitude parts live on 2 and the support of T; the phase
    part is nontrivial only at primes dividing the denominator of the phase
    argument, so its (potentially enormous) numerator is never factored.
    """
    T = Fraction(duration)
    if T == 0:
        raise DomainError("propagation time must be nonzero")
    arg = kernel_phase_argument(x_out, x_in, accel, T)
    extra = denominator_places(arg)
    return places_for(T, always=(2,) + tuple(extra))


def verify_kernel_product(
    x_out: RationalLike, x_in: RationalLike, accel: RationalLike, duration: RationalLike
) -> ProductCheck:
    """Product of local kernels over all places; must combine to exactly 1."""
    places = kernel_places(x_out, x_in, accel, duration)
    return _check_product(places, lambda v: kernel(x_out, x_in, accel, duration, v))


def free_gauss_parameters(
    x_out: RationalLike, x_in: RationalLike, duration: RationalLike
) -> tuple[Fraction, Fraction]:
    """(a, b) whose Gauss factor reproduces the zero-acceleration kernel.

    kernel == gauss_factor(a, b) * |4T|**(-1) * character(-T/2) holds exactly
    place by place; a is in the square class of -8T so the eighth-root parts
    already agree.
    """
    T = Fraction(duration)
    if T == 0:
        raise DomainError("propagation time must be nonzero")
    a = Fraction(-1) / (8 * T)
    b = (Fraction(x_out) - Fraction(x_in)) / (4 * T)
    return a, b


@dataclass(frozen=True)
class WaveFunctionValue:
    """Ground-state value: real profile gated by the p-adic integrality indicator."""

    real_factor: float
    padic_gate: int

    @property
    def value(self) -> float:
        return self.real_factor * self.padic_gate


def oscillator_profile(x: RationalLike) -> float:
    """Real vacuum profile 2**(1/4) * exp(-pi x**2)."""
    t = float(Fraction(x))
    return 2**0.25 * math.exp(-math.pi * t * t)


def ground_state(
    x: RationalLike, real_profile: Callable[[Fraction], float] | None = None
) -> WaveFunctionValue:
    """Adelic ground state at a rational point.

    The finite places contribute the product of integrality indicators, which
    is 1 exactly on the integers; the real place contributes the supplied
    profile (default: the oscillator vacuum).
    """
    x = Fraction(x)
    profile = real_profile if real_profile is not None else oscillator_profile
    gate = 1 if x.denominator == 1 else 0
    return WaveFunctionValue(real_factor=float(profile(x)), padic_gate=gate)


def fourier_self_dual_check(k: RationalLike) -> bool:
    """Check the oscillator vacuum evaluates to its own Fourier transform at k.

    The transform has real factor 2**(1/4) * exp(-pi k**2) and the same
    integrality gate; the gate is compared structurally and the real factors
    to double precision.  The analytic Gaussian self-duality behind the real
    factor is checked separately by quadrature.
    """
    k = Fraction(k)
    lhs = ground_state(k)
    rhs_gate = 1
    if k != 0:
        for p in support(k):
            rhs_gate *= integer_indicator(k, p)
    rhs_real = oscillator_profile(k)
    return lhs.padic_gate == rhs_gate and math.isclose(
        lhs.real_factor, rhs_real, rel_tol=1e-12, abs_tol=1e-300
    )


def gaussian_fourier_residual(k: float) -> float:
    """|quadrature of the Gaussian Fourier integral at k minus exp(-pi k**2)|."""
    val, _ = quad(
        lambda x: math.exp(-math.pi * x * x) * math.cos(2 * math.pi * k * x),
        0.0,
        math.inf,
        limit=200,
    )
    return abs(2.0 * val - math.exp(-math.pi * k * k))
