"""Solution gap of the critical-exponent eigenvalue problem on hyperbolic balls.

For the radial problem  -u'' - (n-1) coth(theta) u' = lambda u + u^((n+2)/(n-2))
on (0, theta1) with u'(0) = u(theta1) = 0 and real 2 < n < 4, positive
solutions exist exactly for lambda in (n(n-2)/4 + L*, n(n-2)/4 + L1), where
L* and L1 are first-zero thresholds of associated Legendre functions of
order -alpha and alpha, alpha = (2-n)/2.  This package evaluates those
Legendre functions, locates the thresholds (with independent finite-element
eigenvalue cross-checks), solves the nonlinear problem by shooting, and
verifies the structural identities behind the result.
"""

from .bvp import (
    ShootOutcome,
    SolutionProfile,
    count_crossings,
    frobenius_coefficient,
    integrate_shoot,
    integrate_shoot_hp,
    rayleigh_quotient,
    residual,
    shoot,
    sobolev_constant,
)
from .errors import (
    BracketFailure,
    DomainTooLarge,
    GammaPoleError,
    IntegrationOverflow,
    InvariantViolation,
    NumericsError,
    RejectedLambda,
    SeriesConvergenceError,
)
from .gap import (
    GapResult,
    fd_eigen_L_one,
    fd_eigen_L_one_extrapolated,
    fd_eigen_L_star,
    fd_eigen_L_star_extrapolated,
    find_L_one,
    find_L_star,
    first_zero_theta,
    gap_interval,
)
from .legendre import LegendreEval, ProblemParams, gamma_real, hyp_series, legendre_p
from .verify import (
    CheckReport,
    PohozaevEval,
    WronskianResult,
    energy_monotonicity,
    pohozaev_eval,
    run_suite,
    wronskian_limit,
    y_nu_eval,
)

__version__ = "0.1.0"

__all__ = [
    "ProblemParams",
    "LegendreEval",
    "GapResult",
    "SolutionProfile",
    "ShootOutcome",
    "CheckReport",
    "PohozaevEval",
    "WronskianResult",
    "gamma_real",
    "hyp_series",
    "legendre_p",
    "first_zero_theta",
    "find_L_star",
    "find_L_one",
    "gap_interval",
    "fd_eigen_L_one",
    "fd_eigen_L_star",
    "fd_eigen_L_one_extrapolated",
    "fd_eigen_L_star_extrapolated",
    "integrate_shoot",
    "integrate_shoot_hp",
    "shoot",
    "residual",
    "count_crossings",
    "sobolev_constant",
    "rayleigh_quotient",
    "frobenius_coefficient",
    "wronskian_limit",
    "pohozaev_eval",
    "y_nu_eval",
    "energy_monotonicity",
    "run_suite",
    "NumericsError",
    "GammaPoleError",
    "SeriesConvergenceError",
    "DomainTooLarge",
    "BracketFailure",
    "InvariantViolation",
    "IntegrationOverflow",
    "RejectedLambda",
]
