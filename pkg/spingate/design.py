"""
Gate-condition solvers.

A gate time t_G must be an odd number of [11] half-periods while every
other configuration completes a whole number of periods:

    t_G = (2n + 1) T11 / 2 = m T01 = l T00

This module solves those conditions for the collinear and non-collinear
schemes, certifies that the anisotropy-free collinear scheme has no
exact solution, analyses pole stability with the drive off, and
converts dimensionless results to laboratory units.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from spingate.analytics import (
    DEFAULT_BISECT_XTOL,
    DEFAULT_GAUSS_NODES,
    DEFAULT_TURNING_GRID,
    elliptic_k_norm,
    period_numeric,
)
from spingate.dynamics import CollinearModel, llg_rhs
from spingate.errors import ArgumentError, InfeasibleError, NumericError
from spingate.spin_core import ControlConfig
from spingate.workers import map_ordered

logger = logging.getLogger(__name__)

# CODATA 2018, pinned so estimates are reproducible bit for bit
BOLTZMANN = 1.380649e-23  # J/K
BOHR_MAGNETON = 9.2740100783e-24  # J/T
HBAR = 1.054571817e-34  # J s

DEFAULT_PHI_MARGIN = 0.01
DEFAULT_MAX_ITER = 200

SCHEMES = ("collinear-a0", "collinear-aniso", "noncollinear")


def _check_int(name: str, value: int, minimum: int) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < minimum:
        raise ArgumentError(f"{name} must be an integer >= {minimum}, got {value!r}")


def _check_positive(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0.0):
        raise ArgumentError(f"{name} must be finite and > 0, got {value!r}")


@dataclass(frozen=True)
class DesignSolution:
    """One solution of the gate conditions."""

    scheme: str
    n: int
    m: int
    t_G: float
    residual: float
    l: Optional[int] = None  # noqa: E741
    h_perp: Optional[float] = None
    phi: Optional[float] = None

    def __post_init__(self) -> None:
        if self.scheme not in SCHEMES:
            raise ArgumentError(f"Unknown scheme {self.scheme!r}")
        if not (math.isfinite(self.t_G) and self.t_G > 0.0):
            raise NumericError(f"Gate time must be positive, got {self.t_G!r}")
        if not self.residual >= 0.0:
            raise NumericError(f"Residual must be >= 0, got {self.residual!r}")

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready mapping; fields that do not apply are omitted."""
        out: Dict[str, Any] = {"scheme": self.scheme, "n": self.n, "m": self.m}
        if self.l is not None:
            out["l"] = self.l
        if self.h_perp is not None:
            out["h_perp"] = self.h_perp
        if self.phi is not None:
            out["phi"] = self.phi
        out["t_G"] = self.t_G
        out["residual"] = self.residual
        return out


def design_collinear_a0(n: int, m: int) -> DesignSolution:
    """Approximate collinear gate without anisotropy.

    Matching the [11] and [01] periods fixes h_perp exactly; the [00]
    condition is then only met approximately and its distance from an
    integer is the residual.
    """
    _check_int("n", n, 0)
    _check_int("m", m, 1)
    odd = 2 * n + 1
    if 2 * m <= odd:
        raise InfeasibleError(f"Need 2m > 2n+1 for a real h_perp (n={n}, m={m})")
    ratio = 2.0 * m / odd
    h_perp = 2.0 / math.sqrt(ratio * ratio - 1.0)
    t_gate = odd * math.pi / h_perp
    l_real = 0.5 * odd * math.sqrt(1.0 + 16.0 / (h_perp * h_perp))
    l_int = int(round(l_real))
    logger.debug("collinear-a0 n=%d m=%d: h_perp=%.12g l=%.12g", n, m, h_perp, l_real)
    return DesignSolution(
        scheme="collinear-a0",
        n=n,
        m=m,
        l=l_int,
        h_perp=h_perp,
        t_G=t_gate,
        residual=abs(l_real - l_int),
    )


@dataclass(frozen=True)
class ParityCertificate:
    """Outcome of the exhaustive search for 16 m^2 - 4 l^2 = 3 (2n + 1)^2."""

    search_bound: int
    checked: int
    solutions: List[Tuple[int, int, int]]
    lhs_divisible_by_4: bool
    rhs_odd: bool

    @property
    def holds(self) -> bool:
        """No exact solution exists and the parity argument was confirmed."""
        return not self.solutions and self.lhs_divisible_by_4 and self.rhs_odd

    def to_dict(self) -> Dict[str, Any]:
        return {
            "search_bound": self.search_bound,
            "checked": self.checked,
            "solutions": [list(s) for s in self.solutions],
            "lhs_divisible_by_4": self.lhs_divisible_by_4,
            "rhs_odd": self.rhs_odd,
            "holds": self.holds,
        }


def parity_obstruction(search_bound: int) -> ParityCertificate:
    """Exhaustively confirm the exact collinear a = 0 gate has no integer solution.

    The left side is a multiple of 4 and the right side is odd, so the
    search is expected to come back empty.
    """
    _check_int("search_bound", search_bound, 1)
    ms = np.arange(1, search_bound + 1, dtype=np.int64)
    ls = np.arange(1, search_bound + 1, dtype=np.int64)
    ns = np.arange(0, search_bound + 1, dtype=np.int64)

    lhs = 16 * ms[:, None] ** 2 - 4 * ls[None, :] ** 2
    rhs = 3 * (2 * ns + 1) ** 2

    solutions: List[Tuple[int, int, int]] = []
    for i, j in zip(*np.nonzero(np.isin(lhs, rhs))):
        for k in np.nonzero(rhs == lhs[i, j])[0]:
            solutions.append((int(ns[k]), int(ms[i]), int(ls[j])))
    solutions.sort()

    return ParityCertificate(
        search_bound=search_bound,
        checked=int(lhs.size * rhs.size),
        solutions=solutions,
        lhs_divisible_by_4=bool(np.all(lhs % 4 == 0)),
        rhs_odd=bool(np.all(rhs % 2 == 1)),
    )


def _noncollinear_condition(phi: float, n: int, m: int, a: float) -> float:
    """(2n+1)/(4 cos phi) K(a / (4 cos phi)) - m K(a / 2)."""
    c = math.cos(phi)
    return (2 * n + 1) / (4.0 * c) * elliptic_k_norm(a / (4.0 * c)) - m * elliptic_k_norm(0.5 * a)


def design_noncollinear(
    n: int,
    m: int,
    a: float = 0.0,
    phi_margin: float = DEFAULT_PHI_MARGIN,
    max_iter: int = DEFAULT_MAX_ITER,
) -> DesignSolution:
    """Control-axis half angle phi that makes the non-collinear gate exact.

    Without anisotropy cos(phi) = (2n+1)/(4m) and t_G = m pi. With
    anisotropy the elliptic condition is solved by bisection and
    t_G = m T01 with T01 = pi K(a/2).
    """
    _check_int("n", n, 0)
    _check_int("m", m, 1)
    if not (math.isfinite(a) and a >= 0.0):
        raise ArgumentError(f"a must be finite and >= 0, got {a!r}")
    odd = 2 * n + 1
    if odd >= 4 * m:
        raise InfeasibleError(f"Need 2n+1 < 4m (n={n}, m={m})")

    if a == 0.0:
        phi = math.acos(odd / (4.0 * m))
        return DesignSolution(
            scheme="noncollinear", n=n, m=m, phi=phi, t_G=m * math.pi, residual=0.0
        )

    if a >= 2.0:
        raise InfeasibleError(f"a={a:g} >= 2: the [01] configuration cannot flip")

    lo = phi_margin
    # the [11] drive 4 cos(phi) must stay above a
    hi = min(0.5 * math.pi - phi_margin, math.acos(a / 4.0) - 1e-9)
    if not lo < hi:
        raise InfeasibleError(f"Empty angle bracket for a={a:g}")

    f_lo = _noncollinear_condition(lo, n, m, a)
    f_hi = _noncollinear_condition(hi, n, m, a)
    logger.debug("noncollinear bracket [%.6g, %.6g] -> f = %.3g, %.3g", lo, hi, f_lo, f_hi)
    if f_lo * f_hi > 0.0:
        raise InfeasibleError(f"No angle in ({lo:.3g}, {hi:.3g}) satisfies the gate condition")

    try:
        phi, info = optimize.bisect(
            _noncollinear_condition,
            lo,
            hi,
            args=(n, m, a),
            xtol=1e-15,
            maxiter=max_iter,
            full_output=True,
        )
    except RuntimeError as exc:
        raise NumericError(f"Angle bisection did not converge: {exc}") from exc
    logger.debug("noncollinear a=%g: phi=%.15g after %d iterations", a, phi, info.iterations)

    return DesignSolution(
        scheme="noncollinear",
        n=n,
        m=m,
        phi=float(phi),
        t_G=m * math.pi * elliptic_k_norm(0.5 * a),
        residual=abs(_noncollinear_condition(phi, n, m, a)),
    )


def design_collinear_aniso(
    a: float,
    h_perp: float,
    h_par: float = -2.0,
    n: int = 0,
    grid: int = DEFAULT_TURNING_GRID,
    nodes: int = DEFAULT_GAUSS_NODES,
    xtol: float = DEFAULT_BISECT_XTOL,
) -> DesignSolution:
    """Residual scan point for the anisotropic collinear scheme.

    There is no closed commensurability condition here: t_G is fixed by
    the [11] flip and the residual says how far the other periods are
    from dividing it, over both start poles.
    """
    _check_int("n", n, 0)
    if h_perp <= a:
        raise InfeasibleError(f"h_perp={h_perp:g} must exceed a={a:g} for the [11] flip")
    model = CollinearModel(a=a, h_par=h_par, h_perp=h_perp)

    t11, flips = period_numeric(model, ControlConfig.C11, 1, grid, nodes, xtol)
    if not flips:
        raise InfeasibleError("The [11] orbit does not reach the opposite pole")
    t_gate = 0.5 * (2 * n + 1) * t11

    ratios: Dict[str, List[float]] = {"01": [], "00": []}
    for pole in (1, -1):
        for label in ratios:
            period, _ = period_numeric(
                model, ControlConfig.from_label(label), pole, grid, nodes, xtol
            )
            ratios[label].append(t_gate / period)

    m = max(1, int(round(ratios["01"][0])))
    l_int = int(round(ratios["00"][0]))
    residual = max(abs(r - round(r)) for values in ratios.values() for r in values)
    return DesignSolution(
        scheme="collinear-aniso",
        n=n,
        m=m,
        l=l_int,
        h_perp=h_perp,
        t_G=t_gate,
        residual=residual,
    )


def _design_point(point: Tuple[str, Dict[str, Any]]) -> Optional[DesignSolution]:
    scheme, kwargs = point
    try:
        if scheme == "collinear-a0":
            return design_collinear_a0(**kwargs)
        if scheme == "noncollinear":
            return design_noncollinear(**kwargs)
        return design_collinear_aniso(**kwargs)
    except (InfeasibleError, NumericError) as exc:
        logger.debug("Skipping %s %s: %s", scheme, kwargs, exc)
        return None


def evaluate_designs(
    scheme: str, points: Sequence[Dict[str, Any]], workers: Optional[int] = None
) -> List[Optional[DesignSolution]]:
    """Run one designer over parameter sets; None marks infeasible points. Input order is kept."""
    if scheme not in SCHEMES:
        raise ArgumentError(f"Unknown scheme {scheme!r}; choose from {', '.join(SCHEMES)}")
    return map_ordered(_design_point, [(scheme, dict(p)) for p in points], workers)


def sweep_design(
    scheme: str,
    n_values: Sequence[int],
    m_values: Sequence[int],
    a: float = 0.0,
    workers: Optional[int] = None,
) -> List[DesignSolution]:
    """All feasible (n, m) designs, best residual first, ties broken by m."""
    if scheme == "collinear-aniso":
        raise ArgumentError("collinear-aniso has no (n, m) sweep; scan a or h_perp instead")
    points: List[Dict[str, Any]] = []
    for n in n_values:
        for m in m_values:
            point: Dict[str, Any] = {"n": n, "m": m}
            if scheme == "noncollinear":
                point["a"] = a
            points.append(point)
    solutions = [s for s in evaluate_designs(scheme, points, workers) if s is not None]
    return sorted(solutions, key=lambda s: (s.residual, s.m, s.n))


@dataclass(frozen=True)
class StabilityReport:
    """Linear stability of the two poles with the drive off."""

    a: float
    h_tilde: float
    eta: float
    real_parts: Dict[int, Tuple[float, float]]
    stable: Dict[int, bool]
    global_condition: bool
    window: bool

    @property
    def both_stable(self) -> bool:
        return self.stable[1] and self.stable[-1]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "a": self.a,
            "h_tilde": self.h_tilde,
            "eta": self.eta,
            "north": {"real_parts": list(self.real_parts[1]), "stable": self.stable[1]},
            "south": {"real_parts": list(self.real_parts[-1]), "stable": self.stable[-1]},
            "global_condition": self.global_condition,
            "window": self.window,
        }


def pole_stability(a: float, h_tilde: float, eta: float) -> StabilityReport:
    """Eigenvalues -(2a + z h_tilde)(eta +- i) at z = +-1.

    A pole is stable when both real parts are strictly negative, so an
    undamped pole is only marginal.
    """
    if not (math.isfinite(a) and a >= 0.0):
        raise ArgumentError(f"a must be finite and >= 0, got {a!r}")
    if not math.isfinite(h_tilde):
        raise ArgumentError(f"h_tilde must be finite, got {h_tilde!r}")
    if not (math.isfinite(eta) and eta >= 0.0):
        raise ArgumentError(f"eta must be finite and >= 0, got {eta!r}")

    real_parts: Dict[int, Tuple[float, float]] = {}
    stable: Dict[int, bool] = {}
    for pole in (1, -1):
        re = -(2.0 * a + pole * h_tilde) * eta
        real_parts[pole] = (re, re)
        stable[pole] = re < 0.0

    return StabilityReport(
        a=a,
        h_tilde=h_tilde,
        eta=eta,
        real_parts=real_parts,
        stable=stable,
        global_condition=2.0 * a > abs(h_tilde),
        window=a > 2.0,
    )


def linearized_eigenvalues(
    a: float, h_tilde: float, eta: float, pole: int, eps: float = 1e-6
) -> np.ndarray:
    """Eigenvalues of the finite-difference Jacobian of the LLG field at a pole.

    The drive is off. One eigenvalue is zero (the radial direction); the
    other two are -(2a + z h_tilde)(eta +- i) / (1 + eta^2).
    """
    if pole not in (1, -1):
        raise ArgumentError(f"pole must be +1 or -1, got {pole!r}")

    def rhs(s: np.ndarray) -> np.ndarray:
        h = np.array([0.0, 0.0, h_tilde + 2.0 * a * s[2]])
        return llg_rhs(s, h, eta)

    s0 = np.array([0.0, 0.0, float(pole)])
    jacobian = np.empty((3, 3))
    for j in range(3):
        d = np.zeros(3)
        d[j] = eps
        jacobian[:, j] = (rhs(s0 + d) - rhs(s0 - d)) / (2.0 * eps)
    eigenvalues = np.linalg.eigvals(jacobian)
    return eigenvalues[np.lexsort((eigenvalues.imag, eigenvalues.real))]


@dataclass(frozen=True)
class PhysicalEstimate:
    """Laboratory-unit figures for a molecular implementation."""

    J_kelvin: float
    S: float
    g_s: float
    t_G: float
    A_kelvin: float
    H_par_tesla: float
    A_min_kelvin: float
    H_perp_min_tesla: float
    time_unit_ps: float
    gate_time_ps: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "J_kelvin": self.J_kelvin,
            "S": self.S,
            "g_s": self.g_s,
            "t_G": self.t_G,
            "A_kelvin": self.A_kelvin,
            "H_par_tesla": self.H_par_tesla,
            "A_min_kelvin": self.A_min_kelvin,
            "H_perp_min_tesla": self.H_perp_min_tesla,
            "time_unit_ps": self.time_unit_ps,
            "gate_time_ps": self.gate_time_ps,
        }


def to_physical_units(
    J_kelvin: float,
    S: float,
    g_s: float,
    t_G: float,
    A_kelvin: Optional[float] = None,
) -> PhysicalEstimate:
    """Fields in tesla and times in picoseconds for exchange J (kelvin) and spin S.

    ``A_kelvin`` defaults to the smallest anisotropy 2J that keeps both
    poles stable.
    """
    for name, value in (("J_kelvin", J_kelvin), ("S", S), ("g_s", g_s), ("t_G", t_G)):
        _check_positive(name, value)
    a_min = 2.0 * J_kelvin
    if A_kelvin is None:
        A_kelvin = a_min
    _check_positive("A_kelvin", A_kelvin)

    zeeman = g_s * BOHR_MAGNETON
    time_unit_ps = HBAR / (J_kelvin * BOLTZMANN * S) * 1e12
    return PhysicalEstimate(
        J_kelvin=J_kelvin,
        S=S,
        g_s=g_s,
        t_G=t_G,
        A_kelvin=A_kelvin,
        H_par_tesla=2.0 * J_kelvin * BOLTZMANN * S / zeeman,
        A_min_kelvin=a_min,
        H_perp_min_tesla=A_kelvin * BOLTZMANN * S / zeeman,
        time_unit_ps=time_unit_ps,
        gate_time_ps=t_G * time_unit_ps,
    )
