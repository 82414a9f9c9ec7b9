"""
Target-spin dynamics for the collinear and non-collinear gate models.

Builds the effective field seen by the target for each control
configuration, evaluates the Landau-Lifshitz-Gilbert vector field and
the model energy, and integrates trajectories with fixed-step RK4 and a
drive that can be switched off at a chosen instant.

Units: the exchange energy is the energy unit and its inverse the time
unit, so fields, anisotropy and frequencies are all dimensionless.

Controls are never integrated; only the target moves.
"""

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from spingate.errors import ArgumentError, IntegrationError
from spingate.spin_core import ControlConfig, Spin3, control_axes

logger = logging.getLogger(__name__)

DEFAULT_DT = 1e-3
DEFAULT_MAX_SAMPLES = 100_000

Vec = Tuple[float, float, float]


def _check_non_negative(name: str, value: float) -> None:
    if not math.isfinite(value) or value < 0.0:
        raise ArgumentError(f"{name} must be finite and >= 0, got {value!r}")


@dataclass(frozen=True)
class CollinearModel:
    """Ising-coupled controls along z, field (h_perp, 0, h_par) on the target."""

    a: float = 0.0
    h_par: float = -2.0
    h_perp: float = 0.0
    eta: float = 0.0

    scheme = "collinear"

    def __post_init__(self) -> None:
        _check_non_negative("a", self.a)
        _check_non_negative("h_perp", self.h_perp)
        _check_non_negative("eta", self.eta)
        if not math.isfinite(self.h_par):
            raise ArgumentError(f"h_par must be finite, got {self.h_par!r}")

    def h_tilde(self, config: ControlConfig) -> float:
        """Net z-field h_par + s1z + s2z set by the controls."""
        s1z, s2z = config.collinear_z()
        return self.h_par + s1z + s2z

    def params(self) -> Dict[str, float]:
        return {"a": self.a, "h_par": self.h_par, "h_perp": self.h_perp, "eta": self.eta}


@dataclass(frozen=True)
class NonCollinearModel:
    """Heisenberg-coupled controls on in-plane axes at +-phi, compensating field h = e1 + e2."""

    phi: float
    a: float = 0.0
    eta: float = 0.0

    scheme = "noncollinear"

    def __post_init__(self) -> None:
        if not (math.isfinite(self.phi) and 0.0 < self.phi < math.pi / 2):
            raise ArgumentError(f"phi must lie in (0, pi/2), got {self.phi!r}")
        _check_non_negative("a", self.a)
        _check_non_negative("eta", self.eta)

    @property
    def h(self) -> np.ndarray:
        e1, e2 = control_axes(self.phi)
        return e1.as_array() + e2.as_array()

    def in_plane_field(self, config: ControlConfig) -> np.ndarray:
        """Exchange plus field, s1 + s2 + h, for a control configuration."""
        s1, s2 = config.noncollinear_spins(self.phi)
        return s1 + s2 + self.h

    def params(self) -> Dict[str, float]:
        return {"phi": self.phi, "a": self.a, "eta": self.eta}


Model = Union[CollinearModel, NonCollinearModel]


@dataclass(frozen=True)
class FieldSchedule:
    """When the drive is switched off; ``t_off=None`` keeps it on throughout.

    In the collinear model the drive is h_perp. In the non-collinear model
    it is the whole s1 + s2 + h interaction; the anisotropy always stays on.
    """

    t_off: Optional[float] = None

    def __post_init__(self) -> None:
        if self.t_off is not None:
            _check_non_negative("t_off", self.t_off)

    @classmethod
    def always_on(cls) -> "FieldSchedule":
        return cls(None)

    @classmethod
    def off(cls) -> "FieldSchedule":
        return cls(0.0)

    def switch_step(self, n_steps: int, step: float) -> int:
        """Index of the first step taken with the drive off (snapped to the nearest step)."""
        if self.t_off is None:
            return n_steps
        return min(n_steps, int(math.floor(self.t_off / step + 0.5)))

    def describe(self) -> str:
        return "always-on" if self.t_off is None else f"off@{self.t_off:.17g}"


@dataclass(frozen=True)
class _FieldTerms:
    """Constant pieces of the effective field: g_on / g_off plus the 2az anisotropy."""

    on: Vec
    off: Vec
    a: float
    offset: float


def _field_terms(model: Model, config: ControlConfig) -> _FieldTerms:
    if isinstance(model, CollinearModel):
        s1z, s2z = config.collinear_z()
        h_tilde = model.h_tilde(config)
        offset = -(model.a * (s1z * s1z + s2z * s2z) + model.h_par * (s1z + s2z))
        return _FieldTerms(
            on=(model.h_perp, 0.0, h_tilde),
            off=(0.0, 0.0, h_tilde),
            a=model.a,
            offset=offset,
        )
    g = model.in_plane_field(config)
    return _FieldTerms(
        on=(float(g[0]), float(g[1]), float(g[2])),
        off=(0.0, 0.0, 0.0),
        a=model.a,
        offset=0.0,
    )


def effective_field(
    model: Model, config: ControlConfig, s: Spin3, drive_on: bool = True
) -> np.ndarray:
    """Field h acting on the target, the negative energy gradient."""
    terms = _field_terms(model, config)
    g = terms.on if drive_on else terms.off
    return np.array([g[0], g[1], g[2] + 2.0 * terms.a * s.z])


def llg_rhs(s: Union[Spin3, np.ndarray], h: np.ndarray, eta: float) -> np.ndarray:
    """Gilbert-damped precession: (1 + eta^2)^-1 s x [h - eta (s x h)]."""
    _check_non_negative("eta", eta)
    vec = s.as_array() if isinstance(s, Spin3) else np.asarray(s, dtype=float)
    h = np.asarray(h, dtype=float)
    torque = np.cross(vec, h)
    return np.cross(vec, h - eta * torque) / (1.0 + eta * eta)


def energy(model: Model, config: ControlConfig, s: Spin3, drive_on: bool = True) -> float:
    """Model energy with effective_field = -dE/ds.

    Collinear: the Ising Hamiltonian including the constant control terms.
    Non-collinear: -[(s1 + s2 + h).s + a z^2], zero for [00] at a = 0.
    """
    terms = _field_terms(model, config)
    return _energy(s.x, s.y, s.z, terms.on if drive_on else terms.off, terms)


def _energy(x: float, y: float, z: float, g: Vec, terms: _FieldTerms) -> float:
    return terms.offset - (g[0] * x + g[1] * y + g[2] * z) - terms.a * z * z


def _rhs(x: float, y: float, z: float, g: Vec, two_a: float, eta: float, scale: float) -> Vec:
    hx, hy, hz = g[0], g[1], g[2] + two_a * z
    # t = s x h
    tx = y * hz - z * hy
    ty = z * hx - x * hz
    tz = x * hy - y * hx
    # s x (h - eta t)
    bx, by, bz = hx - eta * tx, hy - eta * ty, hz - eta * tz
    return (
        scale * (y * bz - z * by),
        scale * (z * bx - x * bz),
        scale * (x * by - y * bx),
    )


def _rk4_step(
    x: float, y: float, z: float, h: float, g: Vec, two_a: float, eta: float, scale: float
) -> Vec:
    k1 = _rhs(x, y, z, g, two_a, eta, scale)
    half = 0.5 * h
    k2 = _rhs(x + half * k1[0], y + half * k1[1], z + half * k1[2], g, two_a, eta, scale)
    k3 = _rhs(x + half * k2[0], y + half * k2[1], z + half * k2[2], g, two_a, eta, scale)
    k4 = _rhs(x + h * k3[0], y + h * k3[1], z + h * k3[2], g, two_a, eta, scale)
    sixth = h / 6.0
    x += sixth * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
    y += sixth * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
    z += sixth * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
    norm = math.sqrt(x * x + y * y + z * z)
    return x / norm, y / norm, z / norm


@dataclass
class Trajectory:
    """Time-sampled target states with energy diagnostics."""

    times: np.ndarray
    spins: np.ndarray
    energies: np.ndarray
    model: Model
    config: ControlConfig
    dt: float
    step: float
    schedule: FieldSchedule
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.times)

    @property
    def final(self) -> Spin3:
        return Spin3.from_array(self.spins[-1])

    @property
    def z(self) -> np.ndarray:
        return self.spins[:, 2]

    def max_norm_error(self) -> float:
        return float(np.max(np.abs(np.linalg.norm(self.spins, axis=1) - 1.0)))

    def max_energy_drift(self) -> float:
        return float(np.max(np.abs(self.energies - self.energies[0])))

    def to_csv(self, path: Union[str, Path], digits: int = 17) -> Path:
        """Write ``t,sx,sy,sz,energy`` rows with ``digits`` significant digits."""
        out = Path(path)
        out.parent.mkdir(parents=True, exist_ok=True)
        table = np.column_stack([self.times, self.spins, self.energies])
        np.savetxt(
            out,
            table,
            fmt=f"%.{digits}g",
            delimiter=",",
            header="t,sx,sy,sz,energy",
            comments="",
            newline="\n",
        )
        return out


def integrate(
    model: Model,
    config: ControlConfig,
    s0: Spin3,
    schedule: Optional[FieldSchedule] = None,
    t_end: float = 1.0,
    dt: float = DEFAULT_DT,
    stride: Optional[int] = None,
    t0: float = 0.0,
    max_samples: int = DEFAULT_MAX_SAMPLES,
) -> Trajectory:
    """Integrate the target spin from ``t0`` to ``t0 + t_end`` with RK4.

    The step is t_end / ceil(t_end / dt) so the last sample lands on
    t_end exactly. The spin is renormalized after every step.
    """
    if not (math.isfinite(t_end) and t_end > 0.0):
        raise ArgumentError(f"t_end must be > 0, got {t_end!r}")
    if not (math.isfinite(dt) and 0.0 < dt <= t_end):
        raise ArgumentError(f"dt must satisfy 0 < dt <= t_end, got dt={dt!r}")
    if stride is not None and stride < 1:
        raise ArgumentError(f"stride must be >= 1, got {stride!r}")
    if max_samples < 2:
        raise ArgumentError(f"max_samples must be >= 2, got {max_samples!r}")
    schedule = schedule or FieldSchedule.always_on()

    n_steps = max(1, math.ceil(t_end / dt - 1e-9))
    step = t_end / n_steps
    k_off = schedule.switch_step(n_steps, step)
    if stride is None:
        # both end points are kept, so at most max_samples - 1 strides
        stride = 1 if n_steps < max_samples else math.ceil(n_steps / (max_samples - 1))

    n_samples = n_steps // stride + 1 + (1 if n_steps % stride else 0)
    times = np.empty(n_samples)
    spins = np.empty((n_samples, 3))
    energies = np.empty(n_samples)

    terms = _field_terms(model, config)
    two_a = 2.0 * terms.a
    eta = model.eta
    scale = 1.0 / (1.0 + eta * eta)

    logger.debug(
        "Integrating %s [%s]: %d steps of %.3g, drive off at step %d, stride %d",
        model.scheme, config.label, n_steps, step, k_off, stride,
    )

    x, y, z = s0.x, s0.y, s0.z
    g = terms.on if k_off > 0 else terms.off
    times[0] = t0
    spins[0] = (x, y, z)
    energies[0] = _energy(x, y, z, g, terms)
    row = 1

    for k in range(n_steps):
        g = terms.on if k < k_off else terms.off
        x, y, z = _rk4_step(x, y, z, step, g, two_a, eta, scale)
        if not math.isfinite(x + y + z):
            raise IntegrationError("Non-finite spin state", t0 + (k + 1) * step)
        done = k + 1
        if done % stride == 0 or done == n_steps:
            times[row] = t0 + done * step
            spins[row] = (x, y, z)
            energies[row] = _energy(x, y, z, g, terms)
            row += 1

    return Trajectory(
        times=times[:row],
        spins=spins[:row],
        energies=energies[:row],
        model=model,
        config=config,
        dt=dt,
        step=step,
        schedule=schedule,
        metadata={"n_steps": n_steps, "switch_step": k_off, "stride": stride},
    )
