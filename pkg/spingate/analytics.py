"""
Closed-form and quadrature period computations for the target spin.

Covers the normalized complete elliptic integral, the precession periods
of the anisotropy-free collinear gate, the anisotropic flip half-period,
and the quartic first integral of the collinear z-motion together with
its numeric period and implicit time solution.

Numeric periods use the substitution z = z_mid + z_half sin(u) between
consecutive turning points, which cancels the inverse square-root
singularities, followed by Gauss-Legendre quadrature.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial.legendre import leggauss
from scipy import integrate, optimize

from spingate.dynamics import CollinearModel
from spingate.errors import (
    ArgumentError,
    ConfinementError,
    DomainError,
    NumericError,
    SeparatrixError,
    TurningPointError,
)
from spingate.spin_core import ControlConfig

logger = logging.getLogger(__name__)

AGM_TOLERANCE = 1e-15
AGM_MAX_ITER = 64
DEFAULT_TURNING_GRID = 10_000
DEFAULT_GAUSS_NODES = 256
DEFAULT_BISECT_XTOL = 1e-14
# R(z) below this (relative to the coefficient scale) means a double root
SEPARATRIX_TOLERANCE = 1e-10
# each level splits the first grid cell again
NEAR_POLE_LEVELS = 3


@dataclass(frozen=True)
class PeriodSet:
    """Precession periods T_[c1 c2] of the four control configurations."""

    T00: float
    T01: float
    T10: float
    T11: float

    def __post_init__(self) -> None:
        for name in ("T00", "T01", "T10", "T11"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise NumericError(f"{name} must be finite and positive, got {value!r}")

    def for_config(self, config: ControlConfig) -> float:
        return float(getattr(self, f"T{config.label}"))


def elliptic_k_norm(k: float) -> float:
    """(1/pi) * integral_0^pi du / sqrt(1 - k^2 sin^2 u), via the arithmetic-geometric mean.

    Equals 1 / AGM(1, sqrt(1 - k^2)).
    """
    if not (math.isfinite(k) and 0.0 <= k < 1.0):
        raise DomainError(f"elliptic_k_norm needs 0 <= k < 1, got {k!r}")
    a, g = 1.0, math.sqrt(1.0 - k * k)
    for _ in range(AGM_MAX_ITER):
        if abs(a - g) < AGM_TOLERANCE:
            break
        a, g = 0.5 * (a + g), math.sqrt(a * g)
    return 1.0 / a


def elliptic_k_norm_quad(k: float) -> float:
    """Adaptive-quadrature oracle for :func:`elliptic_k_norm`."""
    if not (math.isfinite(k) and 0.0 <= k < 1.0):
        raise DomainError(f"elliptic_k_norm_quad needs 0 <= k < 1, got {k!r}")
    k2 = k * k
    value, _ = integrate.quad(
        lambda u: 1.0 / math.sqrt(1.0 - k2 * math.sin(u) ** 2),
        0.0,
        math.pi,
        epsabs=1e-13,
        epsrel=1e-13,
        limit=200,
    )
    return value / math.pi


def periods_collinear_a0(h_perp: float) -> PeriodSet:
    """Larmor periods for a = 0 and h_par = -2."""
    if not (math.isfinite(h_perp) and h_perp > 0.0):
        raise DomainError(f"h_perp must be > 0, got {h_perp!r}")
    two_pi = 2.0 * math.pi
    t01 = two_pi / math.hypot(h_perp, 2.0)
    return PeriodSet(
        T00=two_pi / math.hypot(h_perp, 4.0),
        T01=t01,
        T10=t01,
        T11=two_pi / h_perp,
    )


def half_period_flip(h_drive: float, a: float) -> float:
    """Pole-to-pole time (pi / h) K(a / h) for an in-plane drive h against anisotropy a."""
    if not (math.isfinite(h_drive) and h_drive > 0.0):
        raise DomainError(f"h_drive must be > 0, got {h_drive!r}")
    if not (math.isfinite(a) and a >= 0.0):
        raise DomainError(f"a must be >= 0, got {a!r}")
    if a >= h_drive:
        raise ConfinementError(
            f"a={a:g} >= drive {h_drive:g}: the target cannot cross the equator"
        )
    return math.pi / h_drive * elliptic_k_norm(a / h_drive)


def anisotropic_period(h_drive: float, a: float) -> float:
    """Full flip period, twice :func:`half_period_flip`."""
    return 2.0 * half_period_flip(h_drive, a)


def noncollinear_periods(phi: float, a: float) -> Tuple[float, float]:
    """(T01, T11) of the non-collinear scheme; [00] is frozen and has no period."""
    t01 = anisotropic_period(2.0, a)
    t11 = anisotropic_period(4.0 * math.cos(phi), a)
    return t01, t11


@dataclass(frozen=True)
class QuarticFirstIntegral:
    """(dz/dt)^2 = P(z) for the collinear target started at a pole.

    P(z) = h_perp^2 - r^2 + 2 h_tilde r z - e z^2 - 2 a h_tilde z^3 - a^2 z^4
    with r = a + start_pole * h_tilde and e = h_perp^2 + h_tilde^2 - 2 a r.
    """

    a: float
    h_perp: float
    h_tilde: float
    start_pole: int
    r: float
    e: float
    coefficients: Tuple[float, float, float, float, float]

    def __post_init__(self) -> None:
        residual = abs(self(float(self.start_pole)))
        if residual > 1e-12 * self.scale:
            raise NumericError(f"P(start pole) = {residual:.3g} is not zero")

    @property
    def scale(self) -> float:
        return max(1.0, max(abs(c) for c in self.coefficients))

    @property
    def polynomial(self) -> Polynomial:
        return Polynomial(self.coefficients)

    def __call__(self, z: Any) -> Any:
        return self.polynomial(z)

    def roots(self) -> np.ndarray:
        return self.polynomial.trim().roots()

    def x_of_z(self, z: Any) -> Any:
        """x along the orbit from h_perp x = r - h_tilde z - a z^2."""
        if self.h_perp == 0.0:
            raise DomainError("x(z) is undefined without a transverse drive")
        return (self.r - self.h_tilde * z - self.a * z * z) / self.h_perp

    def acceleration(self, z: Any) -> Any:
        """z'' = h_tilde r - e z - 3 a h_tilde z^2 - 2 a^2 z^3, which is P'(z) / 2."""
        a, ht = self.a, self.h_tilde
        return ht * self.r - self.e * z - 3.0 * a * ht * z * z - 2.0 * a * a * z ** 3


def quartic_first_integral(
    model: CollinearModel, config: ControlConfig, start_pole: int
) -> QuarticFirstIntegral:
    """First integral of the z-motion for ``config`` started at z = ``start_pole``."""
    if not isinstance(model, CollinearModel):
        raise ArgumentError("The quartic first integral applies to the collinear model only")
    if start_pole not in (1, -1):
        raise ArgumentError(f"start_pole must be +1 or -1, got {start_pole!r}")
    a, hp = model.a, model.h_perp
    ht = model.h_tilde(config)
    r = a + start_pole * ht
    e = hp * hp + ht * ht - 2.0 * a * r
    coefficients = (hp * hp - r * r, 2.0 * ht * r, -e, -2.0 * a * ht, -a * a)
    return QuarticFirstIntegral(
        a=a, h_perp=hp, h_tilde=ht, start_pole=start_pole, r=r, e=e,
        coefficients=coefficients,
    )


def _turning_point(
    fi: QuarticFirstIntegral, grid: int = DEFAULT_TURNING_GRID, xtol: float = DEFAULT_BISECT_XTOL
) -> float:
    """The turning point reached first when leaving the start pole."""
    z0 = float(fi.start_pole)
    poly = fi.polynomial
    tol = 1e-12 * fi.scale

    slope = poly.deriv()(z0)
    if abs(slope) <= tol:
        raise SeparatrixError(f"Start pole z={z0:+g} is a double root of P (no motion)")

    zs = np.linspace(z0, -z0, grid + 1)[1:]
    values = poly(zs)
    nonpositive = np.nonzero(values <= 0.0)[0]
    diagnostics: Dict[str, Any] = {
        "start_pole": fi.start_pole,
        "coefficients": list(fi.coefficients),
        "min_value": float(values.min()),
        "max_value": float(values.max()),
    }

    if nonpositive.size == 0:
        # P(-z0) = -4 h_tilde^2, so only the far pole can remain
        if abs(values[-1]) <= tol:
            return -z0
        raise TurningPointError("No sign change of P between the poles", diagnostics)

    i = int(nonpositive[0])
    if i == 0:
        # P leaves the pole with slope * (-z0) > 0; otherwise the target cannot move
        if slope * -z0 <= 0.0:
            raise TurningPointError("P is not positive next to the start pole", diagnostics)
        lo, hi = _refine_near_pole(poly, z0, float(zs[0]), grid, diagnostics)
    elif i == grid - 1 and abs(values[-1]) <= tol:
        return -z0
    else:
        lo, hi = sorted((float(zs[i - 1]), float(zs[i])))

    root = optimize.bisect(poly, lo, hi, xtol=xtol, maxiter=200)
    if abs(poly.deriv()(root)) <= SEPARATRIX_TOLERANCE * fi.scale:
        raise SeparatrixError(f"Turning point z={root:.15g} is a double root (infinite period)")
    logger.debug("Turning point from z=%+g at z=%.15g", z0, root)
    return float(root)


def _refine_near_pole(
    poly: Polynomial, z0: float, z_end: float, grid: int, diagnostics: Dict[str, Any]
) -> Tuple[float, float]:
    """Sign-change bracket for a turning point inside the first grid cell."""
    for _ in range(NEAR_POLE_LEVELS):
        zs = np.linspace(z0, z_end, grid + 1)[1:]
        values = poly(zs)
        # values[-1] = P(z_end) <= 0, so a nonpositive sample always exists
        i = int(np.nonzero(values <= 0.0)[0][0])
        if i > 0:
            lo, hi = sorted((float(zs[i - 1]), float(zs[i])))
            return lo, hi
        z_end = float(zs[0])
    diagnostics["near_pole_cell"] = abs(z_end - z0)
    raise TurningPointError("Turning point closer to the start pole than resolvable", diagnostics)


@dataclass(frozen=True)
class _Orbit:
    z_lo: float
    z_hi: float
    reduced: Polynomial

    @property
    def z_mid(self) -> float:
        return 0.5 * (self.z_hi + self.z_lo)

    @property
    def z_half(self) -> float:
        return 0.5 * (self.z_hi - self.z_lo)

    def time_between(self, u_a: float, u_b: float, nodes: int) -> float:
        """Integral of du / sqrt(R(z(u))) over [u_a, u_b]."""
        if u_b <= u_a:
            return 0.0
        x, w = leggauss(nodes)
        half = 0.5 * (u_b - u_a)
        u = half * x + 0.5 * (u_b + u_a)
        rvals = self.reduced(self.z_mid + self.z_half * np.sin(u))
        if np.min(rvals) <= 0.0:
            raise SeparatrixError("Reduced first integral vanishes inside the orbit")
        return float(half * np.sum(w / np.sqrt(rvals)))


def _orbit(fi: QuarticFirstIntegral, grid: int, xtol: float) -> Tuple[_Orbit, float]:
    z0 = float(fi.start_pole)
    z_turn = _turning_point(fi, grid=grid, xtol=xtol)
    z_lo, z_hi = sorted((z0, z_turn))
    # P = (z_hi - z)(z - z_lo) R(z)
    bracket = -Polynomial.fromroots([z_lo, z_hi])
    reduced, remainder = divmod(fi.polynomial.trim(), bracket)
    if remainder.coef.size and np.max(np.abs(remainder.coef)) > 1e-8 * fi.scale:
        logger.debug("Turning-point division remainder %s", remainder.coef)
    if float(np.min(reduced(np.array([z_lo, z_hi])))) <= SEPARATRIX_TOLERANCE * fi.scale:
        raise SeparatrixError("Turning points form a double root (separatrix orbit)")
    return _Orbit(z_lo=z_lo, z_hi=z_hi, reduced=reduced), z_turn


def period_numeric(
    model: CollinearModel,
    config: ControlConfig,
    start_pole: int,
    grid: int = DEFAULT_TURNING_GRID,
    nodes: int = DEFAULT_GAUSS_NODES,
    xtol: float = DEFAULT_BISECT_XTOL,
) -> Tuple[float, bool]:
    """Period of z(t) and whether the orbit reaches the opposite pole."""
    fi = quartic_first_integral(model, config, start_pole)
    orbit, z_turn = _orbit(fi, grid, xtol)
    half = orbit.time_between(-0.5 * math.pi, 0.5 * math.pi, nodes)
    flips = abs(z_turn + start_pole) < 1e-9
    logger.debug(
        "Period [%s] from z=%+d: %.15g (turning point %.15g, flips=%s)",
        config.label, start_pole, 2.0 * half, z_turn, flips,
    )
    return 2.0 * half, flips


def implicit_time(
    fi: QuarticFirstIntegral,
    z: float,
    grid: int = DEFAULT_TURNING_GRID,
    nodes: int = DEFAULT_GAUSS_NODES,
    xtol: float = DEFAULT_BISECT_XTOL,
) -> float:
    """Time to travel from the start pole to height ``z`` before the first turning point."""
    orbit, _ = _orbit(fi, grid, xtol)
    if not orbit.z_lo - 1e-12 <= z <= orbit.z_hi + 1e-12:
        raise DomainError(
            f"z={z:g} is outside the travelled interval [{orbit.z_lo:g}, {orbit.z_hi:g}]"
        )
    if z >= orbit.z_hi:
        u = 0.5 * math.pi
    elif z <= orbit.z_lo:
        u = -0.5 * math.pi
    else:
        u = math.asin((z - orbit.z_mid) / orbit.z_half)
    if fi.start_pole > 0:
        return orbit.time_between(u, 0.5 * math.pi, nodes)
    return orbit.time_between(-0.5 * math.pi, u, nodes)


def describe_orbit(
    model: CollinearModel, config: ControlConfig, start_pole: int
) -> Optional[Dict[str, Any]]:
    """Turning points and period of one orbit, or None when no period exists."""
    try:
        period, flips = period_numeric(model, config, start_pole)
        fi = quartic_first_integral(model, config, start_pole)
        z_turn = _turning_point(fi)
    except (SeparatrixError, TurningPointError) as exc:
        logger.debug("No periodic orbit for [%s] from %+d: %s", config.label, start_pole, exc)
        return None
    return {
        "config": config.label,
        "start_pole": start_pole,
        "turning_point": z_turn,
        "period": period,
        "flips": flips,
    }
