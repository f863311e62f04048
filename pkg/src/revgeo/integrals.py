"""Orbit, arc-length, and affine-time integrals of the reduced radial motion.

All integrands share the radicand R(r)^2 - p^2 where p = R(0) sin(beta0) is
the Clairaut constant. In the dimensionless variables chi = r/b,
rho(chi) = R/b = c + 1 + cos(chi), w = p/b the three integrals are

    theta(chi)  = Int  (w / rho) / sqrt(rho^2 - w^2) dchi      (orbit angle)
    length      = Int  b rho     / sqrt(rho^2 - w^2) dchi
    affine time = length / sqrt(2E)

For bound motion rho(chi_max) = w, so the integrand has an integrable
1/sqrt endpoint. The substitution chi = chi_max - u^2 removes it exactly;
the radicand is always evaluated through the factorization

    rho^2 - w^2 = (rho - w)(rho + w),
    rho - w     = 2 sin((chi + chi_max)/2) sin((chi_max - chi)/2)

which has no cancellation even arbitrarily close to the turning point.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import DomainError, ForbiddenRegionError
from .potential import critical_angles, turning_point
from .surface import Family, SurfaceSpec

_ORBIT = "orbit"
_LENGTH = "length"

# endpoint slack (in chi) when deciding whether a limit sits on a turning point
_TURN_EPS = 1e-9
# fraction of chi_max up to which plain quadrature is used before switching
# to the substituted tail
_DIRECT_FRACTION = 0.75


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    turning_point_substitution: bool = True
    limit: int = 300

    def __post_init__(self):
        if not (0 < self.abs_tol <= 1e-3 and 0 < self.rel_tol <= 1e-3):
            raise DomainError("quadrature tolerances must lie in (0, 1e-3]")


_DEFAULT = QuadratureConfig()


def _rho(c, chi):
    # c + 1 + cos(chi), grouped so rho - w stays well conditioned
    return c + 2.0 * np.cos(chi / 2.0) ** 2


def _numerator(kind, c, w, rho):
    return w / rho if kind == _ORBIT else rho


def _w_of_beta0(spec, beta0):
    return (spec.c + 2.0) * abs(np.sin(beta0))


def _quad(f, a, b, cfg, points=None):
    # roundoff warnings fire on extreme near-critical boundary layers where
    # only a few digits are needed for bracketing; accuracy where it matters
    # is covered by the ODE cross-checks
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        val, _ = quad(f, a, b, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol,
                      limit=cfg.limit, points=points)
    return val


def _unbound_integral(spec, w, chi_lo, chi_hi, kind, cfg):
    """Integral over [chi_lo, chi_hi] when rho > w everywhere (ring, w < c)."""
    c = spec.c

    def f(chi):
        rho = _rho(c, chi)
        rad = ((c - w) + 2.0 * np.cos(chi / 2.0) ** 2) * (rho + w)
        return _numerator(kind, c, w, rho) / np.sqrt(rad)

    # split at multiples of pi so the peaks at the inner equator sit on
    # subinterval boundaries
    cuts = [chi_lo]
    k = np.floor(chi_lo / np.pi) + 1.0
    while k * np.pi < chi_hi:
        cuts.append(k * np.pi)
        k += 1.0
    cuts.append(chi_hi)
    return sum(_quad(f, lo, hi, cfg) for lo, hi in zip(cuts[:-1], cuts[1:]) if hi > lo)


def _bound_direct(spec, w, chi_max, chi_lo, chi_hi, kind, cfg):
    """Plain quadrature on [chi_lo, chi_hi] strictly inside [0, chi_max)."""
    c = spec.c

    def f(chi):
        rho = _rho(c, chi)
        diff = 2.0 * np.sin((chi + chi_max) / 2.0) * np.sin((chi_max - chi) / 2.0)
        return _numerator(kind, c, w, rho) / np.sqrt(diff * (rho + w))

    return _quad(f, chi_lo, chi_hi, cfg)


def _bound_tail(spec, w, chi_max, chi_from, kind, cfg):
    """Integral from chi_from up to the turning point chi_max.

    Substituting chi = chi_max - u^2 cancels the 1/sqrt endpoint: the factor
    sin((chi_max - chi)/2) = sin(u^2/2) contributes u * sqrt(sinc), leaving a
    smooth integrand in u.
    """
    c = spec.c
    if not cfg.turning_point_substitution:
        # naive fallback: clip the endpoint; converges poorly by design
        hi = chi_max - 1e-9
        if hi <= chi_from:
            return 0.0
        return _bound_direct(spec, w, chi_max, chi_from, hi, kind, cfg)

    def h(u):
        chi = chi_max - u * u
        rho = _rho(c, chi)
        q = 0.5 * u * u
        sinc = np.sinc(q / np.pi)              # sin(q)/q, equals 1 at u = 0
        A = sinc * np.sin((chi + chi_max) / 2.0) * (rho + w)
        return 2.0 * _numerator(kind, c, w, rho) / np.sqrt(A)

    upper = np.sqrt(chi_max - chi_from)
    points = None
    if chi_max > 3.0:
        # near-critical: h has a boundary layer of width sqrt(pi - chi_max)
        # at u = 0; hand quad the breakpoint
        layer = np.sqrt(np.pi - chi_max)
        if 0.0 < layer < upper:
            points = [layer]
    return _quad(h, 0.0, upper, cfg, points=points)


def _bound_primitive(spec, w, chi_max, x, kind, cfg):
    """Odd primitive T(x) = Int_0^x of the bound integrand, |x| <= chi_max."""
    xa = abs(x)
    if xa == 0.0:
        return 0.0
    if xa <= _DIRECT_FRACTION * chi_max:
        val = _bound_direct(spec, w, chi_max, 0.0, xa, kind, cfg)
    else:
        quarter = _bound_tail(spec, w, chi_max, 0.0, kind, cfg)
        val = quarter - (_bound_tail(spec, w, chi_max, xa, kind, cfg)
                         if xa < chi_max else 0.0)
    return np.copysign(val, x)


def orbit_angle(spec: SurfaceSpec, beta0: float, chi: float,
                config: QuadratureConfig = _DEFAULT) -> float:
    """Azimuth swept while the radial angle runs from 0 to chi.

    Odd in both chi and beta0. For bound launches chi must not pass the
    turning point chi_max(beta0).
    """
    s = np.sin(beta0)
    if s == 0.0 or chi == 0.0:
        return 0.0
    w = _w_of_beta0(spec, beta0)
    sign = np.copysign(1.0, s) * np.copysign(1.0, chi)
    xa = abs(chi)
    tp = turning_point(spec, beta0)
    if tp.chi_max is None:
        return sign * _unbound_integral(spec, w, 0.0, xa, _ORBIT, config)
    if xa > tp.chi_max + _TURN_EPS:
        raise DomainError(
            f"chi={chi} lies beyond the turning point chi_max={tp.chi_max}")
    xa = min(xa, tp.chi_max)
    return sign * _bound_primitive(spec, w, tp.chi_max, xa, _ORBIT, config)


def theta_frequency_unbound(spec: SurfaceSpec, beta0: float,
                            config: QuadratureConfig = _DEFAULT) -> float:
    """Radial loops per azimuthal revolution, N = 2 pi / G(2 pi, beta0)."""
    crit = critical_angles(spec)
    if crit.beta_crit is None:
        raise DomainError("unbound nonradial geodesics exist only on ring tori")
    if not 0.0 < beta0 < crit.beta_crit:
        raise DomainError(f"beta0={beta0} outside the unbound range (0, {crit.beta_crit})")
    w = _w_of_beta0(spec, beta0)
    G = _unbound_integral(spec, w, 0.0, 2.0 * np.pi, _ORBIT, config)
    return 2.0 * np.pi / G


def theta_frequency_bound(spec: SurfaceSpec, beta0: float,
                          config: QuadratureConfig = _DEFAULT) -> float:
    """Radial oscillations per revolution for bound launches.

    Increases from 0 just above beta_crit to the supremum sqrt(c+2) at
    beta0 = pi/2 (returned exactly there as the analytic limit).
    """
    crit = critical_angles(spec)
    lo = crit.beta_crit if crit.beta_crit is not None else 0.0
    if not lo < beta0 <= np.pi / 2.0:
        raise DomainError(f"beta0={beta0} outside the bound range ({lo}, pi/2]")
    tp = turning_point(spec, beta0)
    if tp.chi_max is None or tp.chi_max == 0.0:
        return float(np.sqrt(spec.c + 2.0))
    w = _w_of_beta0(spec, beta0)
    quarter = _bound_tail(spec, w, tp.chi_max, 0.0, _ORBIT, config)
    return 2.0 * np.pi / (4.0 * quarter)


def arc_length_unbound_loop(spec: SurfaceSpec, beta0: float, loops: int = 1,
                            config: QuadratureConfig = _DEFAULT) -> float:
    """Arc length of one unbound radial loop (chi advancing by 2 pi), times loops."""
    crit = critical_angles(spec)
    if crit.beta_crit is None or not 0.0 <= beta0 < crit.beta_crit:
        raise DomainError("unbound loops require a ring torus and 0 <= beta0 < beta_crit")
    w = _w_of_beta0(spec, beta0)
    L = spec.b * _unbound_integral(spec, w, 0.0, 2.0 * np.pi, _LENGTH, config)
    return loops * L


def arc_length_bound_period(spec: SurfaceSpec, beta0: float,
                            config: QuadratureConfig = _DEFAULT) -> float:
    """Arc length of one full radial oscillation, four quarter arcs."""
    crit = critical_angles(spec)
    lo = crit.beta_crit if crit.beta_crit is not None else 0.0
    if not lo < beta0 < np.pi / 2.0:
        raise DomainError(f"beta0={beta0} outside the bound range ({lo}, pi/2)")
    tp = turning_point(spec, beta0)
    w = _w_of_beta0(spec, beta0)
    return 4.0 * spec.b * _bound_tail(spec, w, tp.chi_max, 0.0, _LENGTH, config)


def _monotone_arc(spec, w, chi0, chi1, kind, cfg):
    """Signed dimensionless integral along the monotone arc chi0 -> chi1.

    Handles both regimes: w below the inner-equator barrier (any span) and
    well-trapped motion, where both endpoints must lie inside the same
    potential well and may sit exactly on its turning points.
    """
    if chi1 == chi0:
        return 0.0
    c = spec.c
    if w == 0.0:
        return chi1 - chi0 if kind == _LENGTH else 0.0
    if spec.family is Family.RING and w < c * (1.0 - 1e-14):
        lo, hi = min(chi0, chi1), max(chi0, chi1)
        val = _unbound_integral(spec, w, lo, hi, kind, cfg)
        return float(np.copysign(val, chi1 - chi0))
    if w > c + 2.0 + _TURN_EPS:
        raise ForbiddenRegionError("the radicand R^2 - p^2 is negative everywhere")
    chi_t = float(np.arccos(np.clip(w - c - 1.0, -1.0, 1.0)))
    k = np.round(0.5 * (chi0 + chi1) / (2.0 * np.pi))
    x0, x1 = chi0 - 2.0 * np.pi * k, chi1 - 2.0 * np.pi * k
    if max(abs(x0), abs(x1)) > chi_t + _TURN_EPS:
        raise ForbiddenRegionError(
            f"arc [{chi0}, {chi1}] leaves the allowed band |chi| <= {chi_t}")
    x0 = float(np.clip(x0, -chi_t, chi_t))
    x1 = float(np.clip(x1, -chi_t, chi_t))
    return (_bound_primitive(spec, w, chi_t, x1, kind, cfg)
            - _bound_primitive(spec, w, chi_t, x0, kind, cfg))


def affine_time(spec: SurfaceSpec, E: float, ell: float, r0: float, r: float,
                config: QuadratureConfig = _DEFAULT) -> float:
    """Affine-parameter increment along a monotone radial segment r0 -> r.

    Signed like r - r0. Turning-point endpoints are fine (integrable);
    crossing into the region where E < U raises ForbiddenRegionError.
    """
    if not E > 0:
        raise DomainError("affine_time requires positive energy")
    if r == r0:
        return 0.0
    speed = np.sqrt(2.0 * E)
    if ell == 0.0:
        return (r - r0) / speed
    b = spec.b
    w = abs(ell) / (b * speed)
    val = _monotone_arc(spec, w, r0 / b, r / b, _LENGTH, config)
    return val * b / speed


def critical_divergence_estimate(spec: SurfaceSpec, chi: float) -> float:
    """Asymptotic cycle count of the orbit angle near chi = pi at beta_crit.

    At the critical angle the orbit integrand behaves like
    1 / (2 pi sqrt(c) (pi - chi)) per cycle, so the sweep up to chi is about
    ln(1/(pi - chi)) / (2 pi sqrt(c)). Useful as a diagnostic for why root
    finding stalls near beta_crit. Note the value at pi - chi = 1e-10 for
    c = 1 is 3.664, not the rougher 3.3 sometimes quoted.
    """
    if spec.family is not Family.RING:
        raise DomainError("critical asymptote exists only on ring tori")
    if not chi < np.pi:
        raise DomainError("estimate is for chi approaching pi from below")
    return float(np.log(1.0 / (np.pi - chi)) / (2.0 * np.pi * np.sqrt(spec.c)))
