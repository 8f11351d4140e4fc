"""Shooting solver for the critical-exponent radial boundary-value problem

    -u'' - (n-1) coth(theta) u' = lambda u + u^p,   p = (n+2)/(n-2),
    u'(0) = 0,  u(theta1) = 0,  u > 0 on (0, theta1).

The initial-value problem starts from the center height u0 with the Frobenius
balance u(theta) = u0 + a theta^2 + O(theta^4), a = -(lambda u0 + u0^p)/(2n),
and integrates in tau = log(theta): the substitution equidistributes the
concentration scales that appear for large u0 (the trajectory then hugs the
flat-space bubble profile on a theta-scale ~ u0^{-(p-1)/2}).

``shoot`` sweeps u0 geometrically, brackets a first-zero location straddling
theta1 and bisects the shooting height; the sampled map u0 -> first zero is
returned as non-existence evidence when no bracket exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import IntegrationOverflow, InvariantViolation, NumericsError, RejectedLambda
from .gap import find_L_one
from .legendre import ProblemParams, gamma_real

SHOOT_RTOL = 1e-10
THETA_START_CAP = 1e-4
# relative size of the quadratic Frobenius term at theta_start; with the
# quartic correction included the start truncation is ~eps^3 relative
FROBENIUS_EPS = 1e-6
OVERFLOW_GUARD = 1e12
ZETA_MATCH_TOL = 1e-9
BOUNDARY_REL_TOL = 1e-8
RESIDUAL_REL_TOL = 1e-6
# 2048 Simpson intervals; the residual stencil prefers this moderate h: the
# dense-output interpolant has derivative seams ~rtol between integrator
# steps, and their finite-difference amplification scales like rtol/h
PROFILE_POINTS = 2049

U0_SWEEP_MIN = 1e-3
U0_SWEEP_MAX = 1e6
U0_SWEEP_POINTS = 60

# The center-height -> first-zero map has condition number ~ u0^2: errors
# injected while traversing the concentration core amplify like theta^(2-n)
# into the far field, whose amplitude is only ~1/u0.  Measured zero-location
# error stays below ~0.05 * rtol * u0^2 across lambda (a 2x cushion on the
# worst observation), so rtol tightens with u0 (down to a floor) and sampled
# zeros landing within a conservative noise band of theta1 are re-verified
# in extended precision.
SHOOT_RTOL_FLOOR = 3e-14
ZETA_NOISE_FACTOR = 0.1
ZETA_NOISE_BAND = 3.0
HP_DPS = 30
HP_TOL_EXP = -22


@dataclass
class SolutionProfile:
    """Discretized positive radial solution on a uniform [0, theta1] grid."""

    lam: float
    u0: float
    thetas: np.ndarray
    values: np.ndarray
    dvalues: np.ndarray
    residual_max: float


@dataclass
class ShootOutcome:
    kind: str  # "Solution" or "NoSolution"
    profile: SolutionProfile | None
    # for NoSolution: sampled (u0, first zero or None) pairs over the sweep
    evidence: list[tuple[float, float | None]] | None


def frobenius_coefficient(params: ProblemParams, lam: float, u0: float) -> float:
    """Quadratic coefficient a in u = u0 + a theta^2 near the center."""
    return -(lam * u0 + u0**params.p) / (2.0 * params.n)


def _frobenius_quartic(params: ProblemParams, lam: float, u0: float, a: float) -> float:
    """Quartic coefficient b in u = u0 + a theta^2 + b theta^4.

    Matching theta^2 terms of the equation with coth(theta) = 1/theta + theta/3 + ...
    gives b = -a [lambda + p u0^(p-1) + 2(n-1)/3] / (4(n+2)).
    """
    n, p = params.n, params.p
    return -a * (lam + p * u0 ** (p - 1.0) + 2.0 * (n - 1.0) / 3.0) / (4.0 * (n + 2.0))


def _theta_start(params: ProblemParams, lam: float, u0: float) -> float:
    scale = abs(lam) + u0 ** (params.p - 1.0)
    if scale <= 0.0:
        return THETA_START_CAP
    return min(THETA_START_CAP, math.sqrt(2.0 * params.n * FROBENIUS_EPS / scale))


def _rtol_for(u0: float) -> float:
    if u0 <= 50.0:
        return SHOOT_RTOL
    return max(SHOOT_RTOL_FLOOR, SHOOT_RTOL * (50.0 / u0) ** 2)


def _zeta_noise(u0: float) -> float:
    """Estimated absolute error of the computed first-zero location."""
    return ZETA_NOISE_FACTOR * _rtol_for(u0) * u0 * u0


def _shoot_rhs(tau, y, n, lam, p):
    u, w = y  # w = du/dtau
    th = math.exp(tau)
    if th > 1e-8:
        thcoth = th / math.tanh(th)
    else:
        thcoth = 1.0 + th * th / 3.0
    upos = u if u > 0.0 else 0.0
    return (w, -((n - 1.0) * thcoth - 1.0) * w - th * th * (lam * u + upos**p))


def _event_zero(tau, y, n, lam, p):
    return y[0]


_event_zero.terminal = True
_event_zero.direction = -1.0


def _event_overflow(tau, y, n, lam, p):
    return OVERFLOW_GUARD - abs(y[0])


_event_overflow.terminal = True
_event_overflow.direction = -1.0


def _integrate(params: ProblemParams, lam: float, u0: float, theta_cap: float,
               stop_at_zero: bool = True, rtol: float | None = None):
    """Raw log-variable integration; returns the solve_ivp result plus start data."""
    if u0 <= 0.0:
        raise ValueError(f"u0 must be positive, got {u0}")
    n, p = params.n, params.p
    a = frobenius_coefficient(params, lam, u0)
    b = _frobenius_quartic(params, lam, u0, a)
    th0 = _theta_start(params, lam, u0)
    y0 = (
        u0 + a * th0**2 + b * th0**4,
        2.0 * a * th0**2 + 4.0 * b * th0**4,  # du/dtau = theta u'(theta)
    )
    events = [_event_overflow] + ([_event_zero] if stop_at_zero else [])
    # The far-field amplitude of a concentrated shot scales like 1/u0 (the
    # critical exponent makes the bubble hand off at that level), so the
    # absolute tolerance must sit far below min(u0, 1/u0) or the tail -- and
    # with it the first-zero location -- turns into integrator noise.
    atol = 1e-13 * u0 / (1.0 + u0 * u0)
    from scipy.integrate import solve_ivp  # deferred: CLI startup cost

    res = solve_ivp(
        _shoot_rhs,
        (math.log(th0), math.log(theta_cap)),
        y0,
        args=(n, lam, p),
        method="DOP853",
        rtol=_rtol_for(u0) if rtol is None else rtol,
        atol=atol,
        events=events,
        dense_output=True,
    )
    if not res.success:
        raise NumericsError(f"shooting integration failed: {res.message}")
    if len(res.t_events[0]) > 0:
        raise IntegrationOverflow(
            f"|u| exceeded {OVERFLOW_GUARD} (lambda={lam}, u0={u0})"
        )
    return res, (a, b), th0


def integrate_shoot(
    params: ProblemParams,
    lam: float,
    u0: float,
    theta_cap: float | None = None,
) -> tuple[float | None, SolutionProfile]:
    """Shoot once from center height u0; locate the first zero of u.

    Returns (first_zero, profile).  first_zero is None when u stays positive
    up to theta_cap (default theta1).  The profile grid covers [0, stop] with
    stop = min(first_zero, theta_cap); its residual_max field is filled via
    ``residual``.
    """
    cap = params.theta1 if theta_cap is None else theta_cap
    res, ab, th0 = _integrate(params, lam, u0, cap)
    if len(res.t_events[1]) > 0:
        zeta = math.exp(float(res.t_events[1][0]))
    else:
        zeta = None
    stop = cap if zeta is None else min(zeta, cap)
    prof = _build_profile(params, lam, u0, ab, th0, res.sol, stop)
    return zeta, prof


def _first_zero(params: ProblemParams, lam: float, u0: float, theta_cap: float) -> float | None:
    """Zero location only; skips the profile resampling of integrate_shoot."""
    res, _, _ = _integrate(params, lam, u0, theta_cap)
    if len(res.t_events[1]) > 0:
        return math.exp(float(res.t_events[1][0]))
    return None


def _build_profile(params, lam, u0, ab, th0, dense_sol, theta_end) -> SolutionProfile:
    a, b = ab
    thetas = np.linspace(0.0, theta_end, PROFILE_POINTS)
    values = np.empty_like(thetas)
    dvalues = np.empty_like(thetas)
    near = thetas < th0
    tn = thetas[near]
    values[near] = u0 + a * tn**2 + b * tn**4
    dvalues[near] = 2.0 * a * tn + 4.0 * b * tn**3
    far = ~near
    if np.any(far):
        y = dense_sol(np.log(thetas[far]))
        values[far] = y[0]
        dvalues[far] = y[1] / thetas[far]
    prof = SolutionProfile(lam, u0, thetas, values, dvalues, math.nan)
    prof.residual_max = residual(prof, params, lam)
    return prof


def residual(profile: SolutionProfile, params: ProblemParams, lam: float) -> float:
    """Max interior defect |u'' + (n-1) coth(theta) u' + lambda u + u^p|.

    u'' comes from fourth-order central differences of the stored values on
    the uniform grid (the second-order stencil's own truncation error would
    drown the 1e-6-scale gate); u' is the stored derivative.  The max runs
    over the nodes where the five-point stencil fits.
    """
    th = profile.thetas
    if len(th) < 102:
        raise ValueError(f"profile needs >= 100 interior nodes, got {len(th) - 2}")
    h = th[1] - th[0]
    u = profile.values
    du = profile.dvalues
    upp = (-u[4:] + 16.0 * u[3:-1] - 30.0 * u[2:-2] + 16.0 * u[1:-3] - u[:-4]) / (
        12.0 * h * h
    )
    ti = th[2:-2]
    ui = u[2:-2]
    r = upp + (params.n - 1.0) / np.tanh(ti) * du[2:-2] + lam * ui + np.maximum(ui, 0.0) ** params.p
    return float(np.max(np.abs(r)))


def integrate_shoot_hp(
    params: ProblemParams,
    lam: float,
    u0: float,
    theta_cap: float | None = None,
    dps: int = HP_DPS,
) -> float | None:
    """First-zero location by extended-precision integration (mpmath Taylor).

    The double-precision zero location carries ~0.05*rtol*u0^2 error (the
    core passage amplifies local errors by theta^(2-n) while the far field is
    only ~1/u0 tall), which drowns small margins at the top of the u0 sweep.  This
    path trades speed (~seconds per shot) for a conditioning-proof answer; it
    returns only the zero location, no profile.
    """
    import mpmath as mp

    cap = params.theta1 if theta_cap is None else theta_cap
    with mp.workdps(dps):
        n = mp.mpf(params.n)
        p = (n + 2) / (n - 2)
        lam_mp = mp.mpf(lam)
        u0_mp = mp.mpf(u0)
        a = -(lam_mp * u0_mp + u0_mp**p) / (2 * n)
        b = -a * (lam_mp + p * u0_mp ** (p - 1) + 2 * (n - 1) / 3) / (4 * (n + 2))
        scale = abs(lam_mp) + u0_mp ** (p - 1)
        th0 = min(mp.mpf(THETA_START_CAP), mp.sqrt(2 * n * mp.mpf("1e-8") / scale))
        tau0 = mp.log(th0)
        tau_end = mp.log(mp.mpf(cap))
        y0 = [u0_mp + a * th0**2 + b * th0**4, 2 * a * th0**2 + 4 * b * th0**4]

        def rhs(tau, y):
            u, w = y[0], y[1]
            th = mp.e**tau
            thcoth = th / mp.tanh(th)
            nonlin = u**p if u > 0 else mp.mpf(0)
            return [w, -((n - 1) * thcoth - 1) * w - th * th * (lam_mp * u + nonlin)]

        f = mp.odefun(rhs, tau0, y0, tol=mp.mpf(10) ** HP_TOL_EXP, degree=18)

        # march in tau for a sign change, then bisect
        step = mp.mpf("0.125")
        tau_prev = tau = tau0
        while tau < tau_end:
            tau = min(tau + step, tau_end)
            if f(tau)[0] <= 0:
                lo, hi = tau_prev, tau
                for _ in range(80):
                    mid = (lo + hi) / 2
                    if f(mid)[0] > 0:
                        lo = mid
                    else:
                        hi = mid
                return float(mp.e ** ((lo + hi) / 2))
            tau_prev = tau
        return None


def shoot(params: ProblemParams, lam: float) -> ShootOutcome:
    """Solve the boundary-value problem at a given lambda by shooting on u0.

    lambda must lie below lambda_1 = n(n-2)/4 + L1 (no solutions exist at or
    above it).  A Solution is returned when some bracket of the geometric u0
    sweep has its first-zero location straddling theta1; otherwise the sampled
    evidence map documents non-existence at desk scale.  Sampled zeros whose
    distance to theta1 is inside the estimated double-precision noise band are
    re-verified with ``integrate_shoot_hp`` before brackets are trusted.
    """
    lam_one = params.n * (params.n - 2.0) / 4.0 + find_L_one(params)
    if lam >= lam_one:
        raise RejectedLambda(
            f"lambda={lam} >= lambda_1={lam_one:.12g}; no solutions exist there"
        )

    cap = min(params.theta_max, params.theta1 + max(1.0, params.theta1))
    u0s = np.geomspace(U0_SWEEP_MIN, U0_SWEEP_MAX, U0_SWEEP_POINTS)
    zetas = [_first_zero(params, lam, float(u0), cap) for u0 in u0s]
    for k, (u0, z) in enumerate(zip(u0s, zetas)):
        noise = _zeta_noise(float(u0))
        if noise > 1e-7 and z is not None and abs(z - params.theta1) <= ZETA_NOISE_BAND * noise:
            zetas[k] = integrate_shoot_hp(params, lam, float(u0), cap)

    def side(z):
        # sign of (first zero - theta1); no zero up to cap counts as above
        if z is None:
            return 1.0
        return 1.0 if z > params.theta1 else -1.0

    bracket = None
    for k in range(len(u0s) - 1):
        if side(zetas[k]) * side(zetas[k + 1]) < 0.0:
            bracket = (float(u0s[k]), float(u0s[k + 1]), side(zetas[k]))
            break
    if bracket is None:
        return ShootOutcome("NoSolution", None, list(zip(map(float, u0s), zetas)))

    lo, hi, side_lo = bracket
    u0_hit = None
    for _ in range(200):
        mid = math.exp(0.5 * (math.log(lo) + math.log(hi)))
        res, _, _ = _integrate(params, lam, mid, cap)
        if len(res.t_events[1]) > 0:
            zeta = math.exp(float(res.t_events[1][0]))
            w_at = float(res.y_events[1][0][1])  # du/dtau at the crossing
            du_at = w_at / zeta
        else:
            zeta, du_at = None, 1.0
        if zeta is not None and abs(zeta - params.theta1) <= ZETA_MATCH_TOL and (
            abs(du_at) * abs(zeta - params.theta1)
            <= 0.3 * BOUNDARY_REL_TOL * mid
        ):
            u0_hit = mid
            break
        if side(zeta) == side_lo:
            lo = mid
        else:
            hi = mid
        if hi / lo - 1.0 < 1e-15:
            raise NumericsError(
                f"u0 bisection stalled at lambda={lam} (bracket [{lo}, {hi}])"
            )
    if u0_hit is None:
        raise NumericsError(f"u0 bisection did not converge at lambda={lam}")

    # final pass straight to theta1 (no zero event) for the full profile; the
    # tighter tolerance keeps dense-output seams out of the residual stencil
    res, ab, th0 = _integrate(
        params, lam, u0_hit, params.theta1, stop_at_zero=False, rtol=1e-13
    )
    prof = _build_profile(params, lam, u0_hit, ab, th0, res.sol, params.theta1)
    _accept(prof, params, u0_hit, ab[0])
    return ShootOutcome("Solution", prof, None)


def _accept(prof: SolutionProfile, params: ProblemParams, u0: float, a: float):
    """Gate an accepted profile on the solution invariants."""
    interior = prof.values[1:-1]
    if np.any(interior <= 0.0):
        raise InvariantViolation("accepted profile not positive on the interior grid")
    if abs(prof.values[-1]) > BOUNDARY_REL_TOL * u0:
        raise InvariantViolation(
            f"boundary value {prof.values[-1]:.3e} exceeds {BOUNDARY_REL_TOL:g}*u0"
        )
    delta = prof.thetas[1]
    if abs(prof.dvalues[1]) > 3.0 * abs(a) * delta:
        raise InvariantViolation("center slope inconsistent with u'(0) = 0")
    gate = RESIDUAL_REL_TOL * max(1.0, u0**params.p)
    if prof.residual_max > gate:
        raise InvariantViolation(
            f"residual {prof.residual_max:.3e} exceeds the gate {gate:.3e}"
        )
    q = rayleigh_quotient(prof, params, prof.lam)
    if not q < sobolev_constant(params.n):
        raise InvariantViolation(f"variational quotient {q:.6g} not below S_n")


def count_crossings(params: ProblemParams, lam: float, u0_grid) -> int:
    """Number of sign changes of (first zero - theta1) over a u0 grid.

    Used as the uniqueness witness: exactly one bracket in the existence
    interval, none inside the gap.  Monotonicity of the first zero in u0 is
    never assumed; brackets are counted.
    """
    u0_grid = np.asarray(u0_grid, dtype=float)
    if u0_grid.size == 0:
        return 0
    cap = min(params.theta_max, params.theta1 + max(1.0, params.theta1))
    sides = []
    for u0 in u0_grid:
        zeta = _first_zero(params, lam, float(u0), cap)
        sides.append(1.0 if (zeta is None or zeta > params.theta1) else -1.0)
    return int(sum(1 for k in range(len(sides) - 1) if sides[k] * sides[k + 1] < 0.0))


def sobolev_constant(n: float) -> float:
    """Best constant pi n(n-2) (Gamma(n/2)/Gamma(n))^(2/n) of the critical embedding."""
    if not 2.0 < n <= 4.0:
        raise ValueError(f"n must lie in (2, 4], got {n}")
    return math.pi * n * (n - 2.0) * (gamma_real(0.5 * n) / gamma_real(n)) ** (2.0 / n)


def rayleigh_quotient(profile: SolutionProfile, params: ProblemParams, lam: float) -> float:
    """Variational quotient of the profile in geodesic coordinates.

    Q = [w_n I(u'^2) - lambda w_n I(u^2)] / (w_n I(u^{2n/(n-2)}))^{(n-2)/n}
    with I(f) = integral of f sinh^{n-1}(theta) and w_n the unit-sphere area
    2 pi^{n/2} / Gamma(n/2); scale-invariant up to quadrature error.
    """
    from scipy.integrate import simpson  # deferred import

    n = params.n
    th = profile.thetas
    weight = np.sinh(th) ** (n - 1.0)
    omega = 2.0 * math.pi ** (0.5 * n) / gamma_real(0.5 * n)
    upos = np.maximum(profile.values, 0.0)
    num = omega * (
        simpson(profile.dvalues**2 * weight, x=th)
        - lam * simpson(profile.values**2 * weight, x=th)
    )
    den_int = omega * simpson(upos ** (2.0 * n / (n - 2.0)) * weight, x=th)
    if den_int <= 0.0:
        raise ValueError("degenerate profile: vanishing critical-norm denominator")
    return num / den_int ** ((n - 2.0) / n)
