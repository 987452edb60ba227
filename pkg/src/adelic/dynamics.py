"""Determinant-one linear fractional maps over the rationals.

Fixed points, multipliers, per-place attractive/indifferent/repelling
classification, and exact orbit probes.  The multiplier at a rational fixed
point is an exact rational, so the norm product pins down the finite set of
places where the point fails to be indifferent.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .local import INFINITY_PLACE, Place, local_abs
from .rational import DomainError, RationalLike, support, valuation
from .symbols import _sqrt_exact

ATTRACTIVE = "attractive"
INDIFFERENT = "indifferent"
REPELLING = "repelling"


class _AtInfinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inf"


AT_INFINITY = _AtInfinity()

PointLike = Fraction | _AtInfinity


@dataclass(frozen=True)
class MoebiusMap:
    """x -> (a x + b) / (c x + d) with exact rational entries and a d - b c = 1."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self) -> None:
        for name in "abcd":
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.a * self.d - self.b * self.c != 1:
            raise DomainError("map must have determinant exactly 1")

    @property
    def is_identity(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d

    def apply(self, x: PointLike) -> PointLike:
        if x is AT_INFINITY:
            if self.c == 0:
                return AT_INFINITY
            return self.a / self.c
        x = Fraction(x)
        denom = self.c * x + self.d
        if denom == 0:
            return AT_INFINITY
        return (self.a * x + self.b) / denom

    def compose(self, other: "MoebiusMap") -> "MoebiusMap":
        """Matrix product; self applied after other."""
        return MoebiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def __str__(self) -> str:
        return f"({self.a}x + {self.b})/({self.c}x + {self.d})"


@dataclass(frozen=True)
class FixedPoint:
    point: PointLike
    multiplier: Fraction


@dataclass(frozen=True)
class FixedPointSolve:
    points: tuple[FixedPoint, ...]
    irrational_discriminant: Fraction | None


def fixed_points(f: MoebiusMap) -> FixedPointSolve:
    """Exactly solve f(x) = x; multipliers are the exact derivatives there.

    With c = 0 the point at infinity is fixed (multiplier d/a in the 1/x
    chart).  Otherwise the quadratic has rational roots precisely when
    (a+d)**2 - 4 is a rational square; an irrational pair is reported through
    its discriminant.
    """
    if f.is_identity:
        raise DomainError("every point is fixed under the identity map")
    if f.c == 0:
        pts = [FixedPoint(AT_INFINITY, f.d / f.a)]
        if f.a != f.d:
            x = f.b / (f.d - f.a)
            pts.append(FixedPoint(x, f.a / f.d))
        return FixedPointSolve(tuple(pts), None)
    disc = (f.a + f.d) ** 2 - 4
    s = _sqrt_exact(disc)
    if s is None:
        return FixedPointSolve((), disc)
    roots = [(f.a - f.d + s) / (2 * f.c)]
    if s != 0:
        roots.append((f.a - f.d - s) / (2 * f.c))
    pts = []
    for x in roots:
        lam = f.c * x + f.d
        assert lam != 0
        pts.append(FixedPoint(x, 1 / lam**2))
    return FixedPointSolve(tuple(pts), None)


@dataclass(frozen=True)
class FixedPointReport:
    point: PointLike
    multiplier: Fraction
    per_place: tuple[tuple[Place, str], ...]
    exceptional: tuple[Place, ...]

    def label_at(self, place: Place) -> str:
        for v, label in self.per_place:
            if v == place:
                return label
        return INDIFFERENT


@dataclass(frozen=True)
class DynamicsReport:
    reports: tuple[FixedPointReport, ...]
    irrational_discriminant: Fraction | None


def _classify_norm(n: Fraction) -> str:
    if n < 1:
        return ATTRACTIVE
    if n > 1:
        return REPELLING
    return INDIFFERENT


def classify(f: MoebiusMap) -> DynamicsReport:
    """Per-place behaviour of every rational fixed point.

    Places off the archimedean one and the support of the multiplier are
    indifferent automatically, so the exceptional set is finite; with no
    rational fixed point the report is empty and carries the discriminant.
    """
    solve = fixed_points(f)
    reports = []
    for fp in solve.points:
        m = fp.multiplier
        places = [INFINITY_PLACE] + [Place.finite(p) for p in (support(m) if m != 1 else ())]
        table = tuple((v, _classify_norm(local_abs(m, v))) for v in places)
        exceptional = tuple(v for v, label in table if label != INDIFFERENT)
        reports.append(FixedPointReport(fp.point, m, table, exceptional))
    return DynamicsReport(tuple(reports), solve.irrational_discriminant)


@dataclass(frozen=True)
class OrbitProbe:
    """Distances to a fixed point along an exact orbit.

    At a finite place the entries are valuations of x_k - x*; at the
    archimedean place, exact absolute distances.  A pole escape ends the
    orbit early and is reported, not raised.
    """

    entries: tuple[object, ...]
    pole_escape: bool


def orbit_probe(
    f: MoebiusMap,
    x0: RationalLike,
    place: Place,
    steps: int,
    fixed_point: RationalLike,
) -> OrbitProbe:
    """Iterate f exactly from x0, recording the local distance to the fixed point."""
    x_star = Fraction(fixed_point)
    if f.apply(x_star) != x_star:
        raise DomainError(f"{x_star} is not fixed by {f}")
    x: PointLike = Fraction(x0)
    if x == x_star:
        raise DomainError("orbit probe requires a start away from the fixed point")
    entries: list[object] = []
    for _ in range(steps):
        x = f.apply(x)
        if x is AT_INFINITY:
            return OrbitProbe(tuple(entries), True)
        delta = x - x_star
        if place.is_infinite:
            entries.append(abs(delta))
        elif delta == 0:
            entries.append(math.inf)
        else:
            entries.append(int(valuation(delta, place.prime)))
    return OrbitProbe(tuple(entries), False)


def random_map(rng: random.Random, height: int) -> MoebiusMap:
    """Random determinant-one map: sample a, b, c and solve for d."""
    def pick(nonzero: bool = False) -> Fraction:
        num = rng.randint(-height, height)
        while nonzero and num == 0:
            num = rng.randint(-height, height)
        return Fraction(num, rng.randint(1, height))

    a = pick(nonzero=True)
    b = pick()
    c = pick()
    d = (1 + b * c) / a
    return MoebiusMap(a, b, c, d)


def random_map_with_rational_fixed_points(
    rng: random.Random, height: int, parabolic_share: float = 0.15
) -> MoebiusMap:
    """Random determinant-one map guaranteed to have rational fixed points.

    Conjugates a diagonal (or unipotent, with the given probability) model by
    a random invertible rational matrix; multipliers come out as exact squares
    lam**2 and lam**(-2), so the fixed points stay rational.
    """
    def pick(nonzero: bool = False) -> Fraction:
        num = rng.randint(-height, height)
        while nonzero and num == 0:
            num = rng.randint(-height, height)
        return Fraction(num, rng.randint(1, height))

    while True:
        g_a, g_b, g_c, g_d = pick(), pick(), pick(), pick()
        det = g_a * g_d - g_b * g_c
        if det != 0:
            break
    if rng.random() < parabolic_share:
        m_a, m_b, m_c, m_d = Fraction(1), pick(nonzero=True), Fraction(0), Fraction(1)
    else:
        lam = pick(nonzero=True)
        while abs(lam) == 1:
            lam = pick(nonzero=True)
        m_a, m_b, m_c, m_d = lam, Fraction(0), Fraction(0), 1 / lam
    # G M G^-1, with the 1/det of the inverse cancelling in the Moebius action
    a = g_a * m_a + g_b * m_c
    b = g_a * m_b + g_b * m_d
    c = g_c * m_a + g_d * m_c
    d = g_c * m_b + g_d * m_d
    return MoebiusMap(
        (a * g_d - b * g_c) / det,
        (-a * g_b + b * g_a) / det,
        (c * g_d - d * g_c) / det,
        (-c * g_b + d * g_a) / det,
    )
