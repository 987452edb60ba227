"""Independent brute-force oracles used by the test suite.

These deliberately avoid the library's closed forms: quadratic residues by
exhaustive squaring, Hilbert symbols by searching for solutions of the
ternary quadratic modulo prime powers, local zeta factors by shell sums.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from adelic.rational import valuation


def legendre_table(p: int) -> dict[int, int]:
    """Residue classification of every a in [0, p) by listing all squares."""
    squares = {(z * z) % p for z in range(1, p)}
    table = {0: 0}
    for a in range(1, p):
        table[a] = 1 if a in squares else -1
    return table


@lru_cache(maxsize=16)
def _squares_mod(m: int) -> tuple[frozenset[int], tuple[int, ...]]:
    values = {z * z % m for z in range(m)}
    return frozenset(values), tuple(sorted(values))


def _square_class_rep(x: Fraction, p: int, m: int) -> int:
    """Integer representative of x modulo squares, reduced mod m.

    Clearing the denominator by its square and dropping even powers of p
    leaves p**(0 or 1) times a unit; resolving the unit modulo m changes it
    by a factor in 1 + m*Z_p, a square since m is at least p**3.
    """
    v = int(valuation(x, p))
    unit = x / Fraction(p) ** v
    u = unit.numerator * pow(unit.denominator, -1, m) % m
    return p ** (v % 2) * u % m


def hilbert_solvable(x: Fraction, y: Fraction, p: int, k: int | None = None) -> bool:
    """Search for a nonzero solution of z**2 = x*u**2 + y*w**2 mod p**k.

    Any nontrivial local solution can be scaled so the coordinate of minimal
    valuation is 1, so three affine charts cover all primitive solutions.
    """
    if k is None:
        k = 8 if p == 2 else 6
    m = p**k
    xr = _square_class_rep(Fraction(x), p, m)
    yr = _square_class_rep(Fraction(y), p, m)
    square_set, square_list = _squares_mod(m)
    # chart w = 1: z**2 = x u**2 + y
    for s in square_list:
        if (xr * s + yr) % m in square_set:
            return True
    # chart u = 1: z**2 = x + y w**2
    for s in square_list:
        if (yr * s + xr) % m in square_set:
            return True
    # chart z = 1: 1 - x u**2 = y w**2
    y_squares = {(yr * s) % m for s in square_list}
    for s in square_list:
        if (1 - xr * s) % m in y_squares:
            return True
    return False


def zeta_shell_sum(a: float, p: int, tol: float = 1e-12) -> float:
    """Local zeta factor by summing shells of the unit ball directly.

    The ball of radius 1 splits into shells of radius p**-k with measure
    p**-k (1 - 1/p); the integrand is constant on each shell.
    """
    total = 0.0
    k = 0
    while True:
        term = (1 - 1 / p) * p ** (-k) * (p ** (-k)) ** (a - 1.0)
        total += term
        if term < tol:
            break
        k += 1
    return total / (1 - 1 / p)
