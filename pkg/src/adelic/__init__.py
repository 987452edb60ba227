"""Exact arithmetic over the places of the rationals and machine verification
of adelic product identities: norms, characters, quadratic symbols, Weil
indices, Gauss integrals, propagator kernels, local gamma/beta/zeta factors,
and the arithmetic of determinant-one linear fractional maps.
"""

from .rational import (
    DigitExpansion,
    DomainError,
    INFINITE,
    Rational,
    digit_expansion,
    factorize,
    is_prime,
    parse_rational,
    support,
    unit_part,
    valuation,
)
from .local import (
    FiniteAdele,
    INFINITY_PLACE,
    Place,
    RootOfUnity,
    additive_character,
    frac_part,
    integer_indicator,
    local_abs,
    parse_place,
    places_for,
)
from .symbols import (
    EighthRoot,
    ExactFactor,
    hilbert_symbol,
    legendre_symbol,
    verify_hilbert_product,
    verify_lambda_product,
    weil_index,
)
from .gauss import (
    GaussFactor,
    KernelValue,
    WaveFunctionValue,
    fourier_self_dual_check,
    free_gauss_parameters,
    gauss_factor,
    gaussian_fourier_residual,
    ground_state,
    kernel,
    kernel_phase_argument,
    padic_gauss_oracle,
    verify_gauss_product,
    verify_kernel_product,
)
from .special import (
    PoleError,
    ZetaEvaluator,
    beta_local,
    complex_gamma,
    gamma_local,
    mellin_vacuum,
    riemann_zeta,
    verify_beta_product,
    verify_functional_equation,
    verify_gamma_product,
    zeta_adelic,
    zeta_local,
)
from .dynamics import (
    AT_INFINITY,
    MoebiusMap,
    classify,
    fixed_points,
    orbit_probe,
    random_map,
    random_map_with_rational_fixed_points,
)
from .verifier import (
    ProductFamily,
    Registry,
    SuiteReport,
    VerificationReport,
    default_registry,
)

__all__ = [name for name in dir() if not name.startswith("_")]
