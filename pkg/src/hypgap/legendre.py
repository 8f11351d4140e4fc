"""Associated Legendre functions P_l^nu(cosh theta) for real order nu and real
degree entering only through L = -l(l+1).

Convention (series normalization):

    P_l^nu(cosh theta) = coth^nu(theta/2) / Gamma(1-nu)
                         * 2F1(-l, l+1; 1-nu; -sinh^2(theta/2))

The Gauss series is summed with the real term recurrence

    t_{k+1} = t_k * z * (k(k+1) + L) / ((c+k)(k+1)),

which follows from (-l+k)(l+1+k) = k(k+1) + L, so no complex l is ever
needed (for L > 1/4 the nominal l is complex with real part -1/2).

Evaluation strategy: the series is used for theta <= THETA_SWITCH (well inside
the |z| < 1 radius, z = -sinh^2(theta/2)); beyond the switch the Legendre ODE

    y'' + coth(theta) y' + (L - nu^2/sinh^2(theta)) y = 0

is integrated from series initial data at the switch point.  Derivatives with
respect to theta come from the raising relation

    d/dtheta P_l^nu = P_l^{nu+1} + nu coth(theta) P_l^nu .
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainTooLarge, GammaPoleError, SeriesConvergenceError

THETA_MAX_DEFAULT = 10.0
# Series/continuation split. Keeps |z| <= sinh^2(0.6) ~ 0.41 on the series
# side while the integrator never sees the theta -> 0 singularity.
THETA_SWITCH = 1.2
# Series radius: |z| < 1 iff theta < 2*arcsinh(1).
THETA_SERIES_LIMIT = 2.0 * math.asinh(1.0)

SERIES_RTOL = 1e-15
SERIES_KMAX = 10000
CONTINUATION_RTOL = 1e-12
CONTINUATION_ATOL = 1e-14


@dataclass(frozen=True)
class ProblemParams:
    """Problem parameters: the real dimension-like exponent n and ball radius theta1.

    alpha = (2-n)/2 in (-1, 0) is the Legendre order scale and
    p = (n+2)/(n-2) > 3 the critical nonlinearity exponent.
    """

    n: float
    theta1: float
    theta_max: float = THETA_MAX_DEFAULT

    def __post_init__(self):
        if not 2.0 < self.n < 4.0:
            raise ValueError(f"n must lie strictly in (2, 4), got {self.n}")
        if not 0.0 < self.theta1 <= self.theta_max:
            raise ValueError(
                f"theta1 must lie in (0, theta_max={self.theta_max}], got {self.theta1}"
            )

    @property
    def alpha(self) -> float:
        return (2.0 - self.n) / 2.0

    @property
    def p(self) -> float:
        return (self.n + 2.0) / (self.n - 2.0)


@dataclass(frozen=True)
class LegendreEval:
    """One evaluation of P_l^nu(cosh theta) and its theta derivative."""

    value: float
    dtheta: float
    method: str  # "series" or "continuation"


# Lanczos approximation, g = 7, 9 coefficients (standard published table).
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_real(x: float) -> float:
    """Gamma(x) for real non-pole x via the Lanczos rational approximation.

    Relative accuracy is ~1e-14 on (0, 10]; negative non-integer arguments go
    through the reflection formula.
    """
    if x <= 0.0 and x == math.floor(x):
        raise GammaPoleError(f"gamma pole at x={x}")
    if x < 0.5:
        # reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return math.pi / (math.sin(math.pi * x) * gamma_real(1.0 - x))
    y = x - 1.0
    acc = _LANCZOS_C[0]
    for i in range(1, len(_LANCZOS_C)):
        acc += _LANCZOS_C[i] / (y + i)
    t = y + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (y + 0.5) * math.exp(-t) * acc


def hyp_series(L: float, c: float, z: float) -> float:
    """2F1(-l, l+1; c; z) summed through the degree combination L = -l(l+1).

    Terms satisfy t_0 = 1, t_{k+1} = t_k * z * (k(k+1)+L) / ((c+k)(k+1));
    the recurrence is multiplicative, so a single term below the relative
    tail bound kills the whole remainder.
    """
    if abs(z) >= 1.0:
        raise SeriesConvergenceError(f"series requires |z| < 1, got z={z}")
    if c <= 0.0 and c == math.floor(c):
        raise ValueError(f"series parameter c must not be a nonpositive integer, got {c}")
    total = 1.0
    term = 1.0
    for k in range(SERIES_KMAX):
        term *= z * (k * (k + 1) + L) / ((c + k) * (k + 1))
        total += term
        if abs(term) <= SERIES_RTOL * abs(total):
            return total
    raise SeriesConvergenceError(
        f"series hit the {SERIES_KMAX}-term cap (L={L}, c={c}, z={z})"
    )


def _hyp_series_arr(L: float, c: float, z: np.ndarray) -> np.ndarray:
    """Vectorized hyp_series over an array of arguments z (same L, c)."""
    if np.any(np.abs(z) >= 1.0):
        raise SeriesConvergenceError("series requires |z| < 1")
    if c <= 0.0 and c == math.floor(c):
        raise ValueError(f"series parameter c must not be a nonpositive integer, got {c}")
    total = np.ones_like(z)
    term = np.ones_like(z)
    for k in range(SERIES_KMAX):
        term = term * z * ((k * (k + 1) + L) / ((c + k) * (k + 1)))
        total = total + term
        if np.all(np.abs(term) <= SERIES_RTOL * np.abs(total)):
            return total
    raise SeriesConvergenceError(f"series hit the {SERIES_KMAX}-term cap (L={L}, c={c})")


def _check_order(nu: float) -> None:
    # Orders used downstream are {alpha, -alpha, alpha+1, -alpha+1} with
    # alpha in (-1, 0), hence nu in (-1, 2); nu in {0, 1} hits Gamma poles.
    if not -1.0 < nu < 2.0:
        raise ValueError(f"order nu must lie in (-1, 2), got {nu}")
    if nu == math.floor(nu):
        raise ValueError(f"integer order nu={nu} not supported by this convention")


def _series_pair(L: float, nu: float, theta):
    """(P, dP/dtheta) on the series branch; theta scalar or ndarray."""
    th = np.asarray(theta, dtype=float)
    z = -np.sinh(0.5 * th) ** 2
    coth_half = np.cosh(0.5 * th) / np.sinh(0.5 * th)
    p = coth_half**nu / gamma_real(1.0 - nu) * _hyp_series_arr(L, 1.0 - nu, z)
    p_up = coth_half ** (nu + 1.0) / gamma_real(-nu) * _hyp_series_arr(L, -nu, z)
    dp = p_up + nu / np.tanh(th) * p
    if np.ndim(theta) == 0:
        return float(p), float(dp)
    return p, dp


def _ode_rhs(theta, y, L, nu):
    s = math.sinh(theta)
    return (y[1], -math.cosh(theta) / s * y[1] - (L - nu * nu / (s * s)) * y[0])


class _Evaluator:
    """Evaluates P_l^nu(cosh theta) on (0, theta_hi] for one fixed (L, nu).

    The continuation solve from THETA_SWITCH to theta_hi happens once and is
    reused through its dense output, so repeated point queries (grid scans,
    bisection) stay cheap.
    """

    def __init__(self, L: float, nu: float, theta_hi: float):
        _check_order(nu)
        self.L = L
        self.nu = nu
        self.theta_hi = theta_hi
        self._sol = None
        if theta_hi > THETA_SWITCH:
            from scipy.integrate import solve_ivp  # deferred: CLI startup cost

            y0 = _series_pair(L, nu, THETA_SWITCH)
            res = solve_ivp(
                _ode_rhs,
                (THETA_SWITCH, theta_hi),
                y0,
                args=(L, nu),
                method="DOP853",
                rtol=CONTINUATION_RTOL,
                atol=CONTINUATION_ATOL,
                dense_output=True,
            )
            if not res.success:
                raise SeriesConvergenceError(f"continuation integrator failed: {res.message}")
            self._sol = res.sol

    def value(self, theta: float) -> float:
        if theta <= THETA_SWITCH:
            z = -math.sinh(0.5 * theta) ** 2
            coth_half = math.cosh(0.5 * theta) / math.sinh(0.5 * theta)
            return coth_half**self.nu / gamma_real(1.0 - self.nu) * hyp_series(
                self.L, 1.0 - self.nu, z
            )
        return float(self._sol(theta)[0])

    def pair(self, theta: float):
        """(value, dtheta) at a single point."""
        if theta <= THETA_SWITCH:
            return _series_pair(self.L, self.nu, theta)
        v, d = self._sol(theta)
        return float(v), float(d)

    def values(self, thetas: np.ndarray) -> np.ndarray:
        thetas = np.asarray(thetas, dtype=float)
        out = np.empty_like(thetas)
        low = thetas <= THETA_SWITCH
        if np.any(low):
            out[low], _ = _series_pair(self.L, self.nu, thetas[low])
        if np.any(~low):
            out[~low] = self._sol(thetas[~low])[0]
        return out

    def pairs(self, thetas: np.ndarray):
        thetas = np.asarray(thetas, dtype=float)
        vals = np.empty_like(thetas)
        dvals = np.empty_like(thetas)
        low = thetas <= THETA_SWITCH
        if np.any(low):
            vals[low], dvals[low] = _series_pair(self.L, self.nu, thetas[low])
        if np.any(~low):
            y = self._sol(thetas[~low])
            vals[~low], dvals[~low] = y[0], y[1]
        return vals, dvals


def legendre_p(
    L: float,
    nu: float,
    theta: float,
    params: ProblemParams | None = None,
    *,
    force_method: str | None = None,
) -> LegendreEval:
    """Evaluate P_l^nu(cosh theta) and its theta derivative.

    Valid on (0, theta_max]; theta_max comes from ``params`` when given.
    ``force_method`` ("series" or "continuation") overrides the branch choice
    for consistency testing; the series is then allowed up to its radius and
    the continuation anchor integrates from THETA_SWITCH in either direction.
    """
    theta_max = params.theta_max if params is not None else THETA_MAX_DEFAULT
    if theta <= 0.0:
        raise ValueError(f"theta must be positive, got {theta}")
    if theta > theta_max:
        raise DomainTooLarge(f"theta={theta} exceeds theta_max={theta_max}")
    _check_order(nu)

    if force_method == "series" or (force_method is None and theta <= THETA_SWITCH):
        if theta >= THETA_SERIES_LIMIT:
            raise SeriesConvergenceError(
                f"theta={theta} outside the series radius {THETA_SERIES_LIMIT:.6f}"
            )
        v, d = _series_pair(L, nu, theta)
        return LegendreEval(v, d, "series")

    if force_method not in (None, "continuation"):
        raise ValueError(f"unknown method {force_method!r}")
    from scipy.integrate import solve_ivp  # deferred: CLI startup cost

    y0 = _series_pair(L, nu, THETA_SWITCH)
    if theta == THETA_SWITCH:
        return LegendreEval(y0[0], y0[1], "continuation")
    res = solve_ivp(
        _ode_rhs,
        (THETA_SWITCH, theta),
        y0,
        args=(L, nu),
        method="DOP853",
        rtol=CONTINUATION_RTOL,
        atol=CONTINUATION_ATOL,
    )
    if not res.success:
        raise SeriesConvergenceError(f"continuation integrator failed: {res.message}")
    return LegendreEval(float(res.y[0, -1]), float(res.y[1, -1]), "continuation")
