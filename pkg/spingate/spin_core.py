"""
Domain types for the spin gate: unit spins, encoding axes, control
configurations, and the bit encoding on the unit sphere.

A bit lives on a pole of its encoding axis: +axis is 1, -axis is 0.
Readout tolerates excursions from the pole through a projection threshold.
"""

import enum
import logging
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple, Union

import numpy as np

from spingate.errors import ArgumentError

logger = logging.getLogger(__name__)

# Inputs within this distance of unit modulus are silently normalized
NORMALIZE_TOLERANCE = 1e-6
DEFAULT_THRESHOLD = 0.9
# Rounding slack so a spin built on an axis decodes at threshold 1
PROJECTION_SLACK = 1e-12


@dataclass(frozen=True)
class Spin3:
    """Unit 3-vector carrying a spin orientation."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        values = (float(self.x), float(self.y), float(self.z))
        if not all(math.isfinite(v) for v in values):
            raise ArgumentError(f"Spin components must be finite, got {values}")
        norm = math.sqrt(sum(v * v for v in values))
        if abs(norm - 1.0) > NORMALIZE_TOLERANCE:
            raise ArgumentError(f"Spin modulus {norm:.9g} is not unit")
        object.__setattr__(self, "x", values[0] / norm)
        object.__setattr__(self, "y", values[1] / norm)
        object.__setattr__(self, "z", values[2] / norm)

    @classmethod
    def from_array(cls, values: Iterable[float]) -> "Spin3":
        x, y, z = (float(v) for v in values)
        return cls(x, y, z)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def dot(self, other: Union["Spin3", "Axis3"]) -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def __neg__(self) -> "Spin3":
        return Spin3(-self.x, -self.y, -self.z)


@dataclass(frozen=True)
class Axis3:
    """Unit vector defining a local easy (encoding) axis.

    Any non-zero input is normalized, so the stored vector is unit to
    floating precision.
    """

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        values = (float(self.x), float(self.y), float(self.z))
        norm = math.sqrt(sum(v * v for v in values))
        if not math.isfinite(norm) or norm == 0.0:
            raise ArgumentError(f"Axis needs a finite non-zero vector, got {values}")
        object.__setattr__(self, "x", values[0] / norm)
        object.__setattr__(self, "y", values[1] / norm)
        object.__setattr__(self, "z", values[2] / norm)

    @classmethod
    def z_axis(cls) -> "Axis3":
        return cls(0.0, 0.0, 1.0)

    @classmethod
    def in_plane(cls, angle: float) -> "Axis3":
        """Axis in the xy-plane at ``angle`` radians from the x-axis."""
        return cls(math.cos(angle), math.sin(angle), 0.0)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


class BitValue(enum.Enum):
    """Decoded value of a spin projected on its encoding axis."""

    ZERO = "zero"
    ONE = "one"
    UNDECIDED = "undecided"

    @property
    def bit(self) -> Optional[int]:
        if self is BitValue.ONE:
            return 1
        if self is BitValue.ZERO:
            return 0
        return None


class ControlConfig(enum.Enum):
    """The four logical states [c1 c2] of the two control spins."""

    C00 = (0, 0)
    C01 = (0, 1)
    C10 = (1, 0)
    C11 = (1, 1)

    @classmethod
    def from_bits(cls, c1: int, c2: int) -> "ControlConfig":
        _check_bit(c1)
        _check_bit(c2)
        return cls((c1, c2))

    @classmethod
    def from_label(cls, label: str) -> "ControlConfig":
        """Parse a label such as ``"01"``."""
        if len(label) != 2 or any(ch not in "01" for ch in label):
            raise ArgumentError(f"Control configuration must be one of 00/01/10/11, got {label!r}")
        return cls.from_bits(int(label[0]), int(label[1]))

    @property
    def bits(self) -> Tuple[int, int]:
        return self.value

    @property
    def label(self) -> str:
        return f"{self.value[0]}{self.value[1]}"

    def collinear_z(self) -> Tuple[float, float]:
        """Control spin z-components (s1z, s2z) in the collinear model."""
        c1, c2 = self.value
        return (1.0 if c1 else -1.0, 1.0 if c2 else -1.0)

    def noncollinear_spins(self, phi: float) -> Tuple[np.ndarray, np.ndarray]:
        """Control spins (+-e1, +-e2) with e1, e2 at +-phi from the x-axis."""
        e1, e2 = control_axes(phi)
        c1, c2 = self.value
        s1 = e1.as_array() if c1 else -e1.as_array()
        s2 = e2.as_array() if c2 else -e2.as_array()
        return s1, s2


def control_axes(phi: float) -> Tuple[Axis3, Axis3]:
    """Easy axes e1 = (cos phi, sin phi, 0) and e2 = (cos phi, -sin phi, 0)."""
    return Axis3.in_plane(phi), Axis3.in_plane(-phi)


def _check_bit(bit: int) -> None:
    if bit not in (0, 1):
        raise ArgumentError(f"Bit must be 0 or 1, got {bit!r}")


def encode_bit(bit: int, axis: Axis3) -> Spin3:
    """Spin pointing along +axis for 1 and -axis for 0."""
    _check_bit(bit)
    sign = 1.0 if bit == 1 else -1.0
    return Spin3(sign * axis.x, sign * axis.y, sign * axis.z)


def decode_bit(s: Spin3, axis: Axis3, threshold: float = DEFAULT_THRESHOLD) -> BitValue:
    """Read a bit from the projection of ``s`` on ``axis``."""
    if not 0.0 < threshold <= 1.0:
        raise ArgumentError(f"Decode threshold must lie in (0, 1], got {threshold!r}")
    projection = s.dot(axis)
    if projection >= threshold - PROJECTION_SLACK:
        return BitValue.ONE
    if projection <= -threshold + PROJECTION_SLACK:
        return BitValue.ZERO
    return BitValue.UNDECIDED


def toffoli_expected(c1: int, c2: int, t: int) -> int:
    """Target output of a Toffoli gate: flipped iff both controls are 1."""
    for bit in (c1, c2, t):
        _check_bit(bit)
    return t ^ (c1 & c2)
