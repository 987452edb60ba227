import math
import random

import mpmath
import pytest

from adelic.local import INFINITY_PLACE, Place
from adelic.rational import DomainError
from adelic.special import (
    PoleError,
    beta_local,
    complex_gamma,
    gamma_local,
    mellin_vacuum,
    real_vacuum_moment,
    riemann_zeta,
    verify_beta_product,
    verify_functional_equation,
    verify_gamma_product,
    zeta_adelic,
    zeta_local,
)

from oracles import zeta_shell_sum

P2, P3, P5 = (Place.finite(p) for p in (2, 3, 5))

ZETA_REFERENCES = {
    2: math.pi**2 / 6,
    4: math.pi**4 / 90,
    -1: -1.0 / 12.0,
    3: 1.2020569031595943,
    0.5: -1.4603545088095868,
}


class TestComplexGamma:
    def test_reference_values(self):
        assert abs(complex_gamma(1) - 1) < 1e-13
        assert abs(complex_gamma(0.5) - math.sqrt(math.pi)) < 1e-13
        assert abs(complex_gamma(5) - 24) < 1e-11
        assert abs(complex_gamma(-0.5) - (-2 * math.sqrt(math.pi))) < 1e-12

    def test_complex_points_against_mpmath(self):
        for z in (2 + 3j, -1.5 + 0.5j, 0.25 - 2j):
            ref = complex(mpmath.gamma(z))
            assert abs(complex_gamma(z) - ref) < 1e-12 * max(1, abs(ref))

    def test_pole(self):
        with pytest.raises(PoleError):
            complex_gamma(-3)


class TestZetaEvaluator:
    @pytest.mark.parametrize("point,expected", sorted(ZETA_REFERENCES.items()))
    def test_reference_values(self, point, expected):
        assert abs(riemann_zeta(point) - expected) < 1e-10

    def test_complex_against_mpmath(self):
        rng = random.Random(5)
        for _ in range(25):
            s = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
            if abs(s - 1) < 0.2:
                continue
            ref = complex(mpmath.zeta(s))
            assert abs(riemann_zeta(s) - ref) < 1e-11 * max(1.0, abs(ref))

    def test_pole_at_one(self):
        with pytest.raises(PoleError):
            riemann_zeta(1)


class TestGammaLocal:
    def test_dyadic(self):
        assert abs(gamma_local(2, P2) - (-4.0 / 3.0)) < 1e-13

    def test_archimedean(self):
        assert abs(gamma_local(2, INFINITY_PLACE) - (-1 / (2 * math.pi**2))) < 1e-12

    def test_symmetric_point(self):
        for p in (P2, P3, P5):
            assert abs(gamma_local(0.5, p) - 1) < 1e-14

    def test_archimedean_domain(self):
        with pytest.raises(DomainError):
            gamma_local(0, INFINITY_PLACE)
        with pytest.raises(DomainError):
            gamma_local(1, INFINITY_PLACE)

    def test_local_pole(self):
        with pytest.raises(PoleError):
            gamma_local(0, P3)

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_reflection_inverse(self, p):
        rng = random.Random(17 + p)
        place = Place.finite(p)
        for _ in range(100):
            a = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            try:
                prod = gamma_local(a, place) * gamma_local(1 - a, place)
            except PoleError:
                continue
            assert abs(prod - 1) < 1e-12


class TestBetaLocal:
    def test_symmetric_third(self):
        g = gamma_local(1 / 3, P3)
        assert abs(beta_local(1 / 3, 1 / 3, P3) - g**3) < 1e-13

    def test_dyadic_example(self):
        assert abs(beta_local(2, 2, P2) - (-5.0 / 21.0)) < 1e-13

    def test_argument_symmetry(self):
        rng = random.Random(23)
        for _ in range(50):
            a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            b = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            for place in (P2, P5, INFINITY_PLACE):
                try:
                    lhs = beta_local(a, b, place)
                    rhs = beta_local(b, a, place)
                except DomainError:
                    continue
                assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(lhs))

    def test_pole_labels_argument(self):
        with pytest.raises(DomainError, match="c ="):
            beta_local(0.5, 0.5, P3)

    def test_invariant_under_argument_cycle(self):
        # the value is a product over a, b and c = 1-a-b, so any two of the
        # three determine the same number
        rng = random.Random(29)
        for _ in range(30):
            a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            b = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            c = 1 - a - b
            for place in (P2, INFINITY_PLACE):
                try:
                    v1 = beta_local(a, b, place)
                    v2 = beta_local(b, c, place)
                    v3 = beta_local(c, a, place)
                except DomainError:
                    continue
                scale = max(1.0, abs(v1))
                assert abs(v1 - v2) < 1e-9 * scale
                assert abs(v1 - v3) < 1e-9 * scale


class TestGammaProduct:
    def test_integer_points(self):
        assert verify_gamma_product(2).residual < 1e-10
        assert verify_gamma_product(0.5).residual < 1e-10

    def test_trivial_zero_point_cancels(self):
        report = verify_gamma_product(3)
        assert report.cancelled
        assert report.residual < 1e-10

    def test_excluded_points(self):
        for u in (0, 1):
            with pytest.raises(DomainError):
                verify_gamma_product(u)

    def test_grid(self):
        u = -2.5
        while u <= 3.5:
            skip = any(abs(u - c) < 0.2 for c in (0.0, 1.0, -2.0))
            if not skip:
                assert verify_gamma_product(u).residual < 1e-9, u
            u += 0.25

    def test_random_complex(self):
        rng = random.Random(31)
        count = 0
        while count < 100:
            u = complex(rng.uniform(-4, 4), rng.uniform(-3, 3))
            if abs(u) > 5 or abs(u) < 0.2 or abs(u - 1) < 0.2:
                continue
            if abs(u.imag) < 0.2 and abs(u.real - round(u.real)) < 0.2:
                continue
            assert verify_gamma_product(u).residual < 1e-9
            count += 1


class TestBetaProduct:
    def test_constraint_satisfied_grid(self):
        rng = random.Random(37)
        count = 0
        while count < 40:
            a = complex(rng.uniform(-2, 3), rng.uniform(-2, 2))
            b = complex(rng.uniform(-2, 3), rng.uniform(-2, 2))
            c = 1 - a - b
            if any(
                abs(u.imag) < 0.2 and abs(u.real - round(u.real)) < 0.2
                for u in (a, b, c)
            ):
                continue
            report = verify_beta_product(a, b)
            assert abs(report.c - c) < 1e-12
            assert report.residual < 1e-9
            count += 1


class TestZetaLocal:
    def test_archimedean(self):
        assert abs(zeta_local(2, INFINITY_PLACE) - 1 / math.pi) < 1e-13

    def test_finite(self):
        assert abs(zeta_local(2, P3) - 9.0 / 8.0) < 1e-14
        for p in (2, 3, 5, 7):
            assert abs(zeta_local(1, Place.finite(p)) - p / (p - 1)) < 1e-13

    def test_pole(self):
        with pytest.raises(PoleError):
            zeta_local(0, P5)

    @pytest.mark.parametrize("p", [2, 3, 5])
    @pytest.mark.parametrize("a", [1.5, 2.0, 3.0, 4.5])
    def test_shell_sum_oracle(self, p, a):
        assert abs(zeta_local(a, Place.finite(p)).real - zeta_shell_sum(a, p)) < 1e-11

    @pytest.mark.parametrize("a", [1.5, 2.0, 3.0, 4.0])
    def test_archimedean_quadrature_oracle(self, a):
        closed = zeta_local(a, INFINITY_PLACE).real
        assert abs(real_vacuum_moment(a) - closed) < 1e-8


class TestZetaAdelic:
    def test_value_at_two(self):
        assert abs(zeta_adelic(2) - math.pi / 6) < 1e-12

    def test_reflected_trivial_zero_point(self):
        assert abs(zeta_adelic(-1) - math.pi / 6) < 1e-12

    def test_negative_even_limit(self):
        assert abs(zeta_adelic(-2) - zeta_adelic(3)) < 1e-12

    def test_poles(self):
        for a in (0, 1):
            with pytest.raises(PoleError):
                zeta_adelic(a)

    def test_functional_equation_examples(self):
        assert verify_functional_equation(2) < 1e-9
        assert verify_functional_equation(0.5) == 0
        assert verify_functional_equation(3 + 0.5j) < 1e-8

    def test_functional_equation_grid(self):
        grid = [-2.5, -1.7, -0.8, 0.3, 0.5, 1.3, 2.0, 2.6, 3.4, 4.1]
        grid += [complex(0.5, t) for t in (0.5, 1.5, 3.0)]
        grid += [complex(2.2, -1.1), complex(-1.3, 0.7), complex(3.7, 2.2),
                 complex(1.6, -2.4), complex(-0.4, 1.9), complex(4.4, 0.8),
                 complex(2.9, 3.1)]
        assert len(grid) == 20
        for a in grid:
            assert verify_functional_equation(a) < 1e-8, a

    def test_functional_equation_random(self):
        rng = random.Random(41)
        count = 0
        while count < 100:
            a = complex(rng.uniform(-4, 4), rng.uniform(-3, 3))
            if abs(a) > 5:
                continue
            if abs(a.imag) < 0.2 and abs(a.real - round(a.real)) < 0.2:
                continue
            assert verify_functional_equation(a) < 1e-8, a
            count += 1


class TestMellin:
    @pytest.mark.parametrize("a", [1.5, 2.0, 3.0, 4.0])
    def test_numeric_matches_closed(self, a):
        comparison = mellin_vacuum(a)
        assert comparison.residual < 1e-8

    def test_closed_values(self):
        assert abs(mellin_vacuum(2.0).closed - math.sqrt(2) * math.pi / 6) < 1e-12
        assert abs(mellin_vacuum(4.0).closed - math.sqrt(2) * math.pi**2 / 90) < 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            mellin_vacuum(1.0)
