"""
Configuration management for spingate.

Handles reading INI configuration files with cross-platform
path handling and type-safe accessors for the numerical defaults
(step size, decode thresholds, quadrature and solver settings).
"""

import configparser
import logging
import os
from pathlib import Path
from typing import Optional

logger = logging.getLogger(__name__)


def _find_base_path() -> Path:
    """Find the spingate base path.

    Resolution order:
    1. SPINGATE_HOME environment variable
    2. ~/.spingate (user home directory)
    """
    env_path = os.environ.get("SPINGATE_HOME")
    if env_path:
        return Path(env_path).resolve()

    return Path.home() / ".spingate"


class SpinGateConfig:
    """Configuration manager for spingate.

    Reads configuration from INI files and provides type-safe accessors
    with default value fallbacks.
    """

    # Default configuration values
    DEFAULTS = {
        "integrator": {
            "dt": "0.001",
            "max_samples": "100000",
        },
        "verify": {
            "threshold": "0.9",
            "relax_threshold": "0.999",
        },
        "analytics": {
            "turning_grid": "10000",
            "gauss_nodes": "256",
            "bisect_xtol": "1e-14",
        },
        "design": {
            "phi_margin": "0.01",
            "max_iter": "200",
        },
        "runtime": {
            "threads": "0",
        },
        "output": {
            "float_digits": "17",
        },
    }

    def __init__(self, base_path: Optional[Path] = None):
        """Initialize configuration.

        Args:
            base_path: Root path for spingate. If None, auto-detected.
        """
        self.base_path = Path(base_path).resolve() if base_path else _find_base_path()

        self.config_dir = self.base_path / "config"

        self._config = configparser.ConfigParser()
        self._load_defaults()
        self._load_user_config()

    def _load_defaults(self) -> None:
        """Load default configuration values."""
        for section, values in self.DEFAULTS.items():
            if not self._config.has_section(section):
                self._config.add_section(section)
            for key, value in values.items():
                self._config.set(section, key, value)

    def _load_user_config(self) -> None:
        """Load user configuration from defaults.ini if it exists."""
        config_path = self.config_dir / "defaults.ini"
        if config_path.exists():
            logger.debug("Reading user config %s", config_path)
            self._config.read(str(config_path))

    # --- Type-safe property accessors ---

    @property
    def dt(self) -> float:
        return self._config.getfloat("integrator", "dt", fallback=1e-3)

    @property
    def max_samples(self) -> int:
        return self._config.getint("integrator", "max_samples", fallback=100000)

    @property
    def threshold(self) -> float:
        return self._config.getfloat("verify", "threshold", fallback=0.9)

    @property
    def relax_threshold(self) -> float:
        return self._config.getfloat("verify", "relax_threshold", fallback=0.999)

    @property
    def turning_grid(self) -> int:
        return self._config.getint("analytics", "turning_grid", fallback=10000)

    @property
    def gauss_nodes(self) -> int:
        return self._config.getint("analytics", "gauss_nodes", fallback=256)

    @property
    def bisect_xtol(self) -> float:
        return self._config.getfloat("analytics", "bisect_xtol", fallback=1e-14)

    @property
    def phi_margin(self) -> float:
        return self._config.getfloat("design", "phi_margin", fallback=0.01)

    @property
    def max_iter(self) -> int:
        return self._config.getint("design", "max_iter", fallback=200)

    @property
    def threads(self) -> int:
        """Worker count; 0 in the INI file means available parallelism."""
        value = self._config.getint("runtime", "threads", fallback=0)
        if value <= 0:
            return os.cpu_count() or 1
        return value

    @property
    def float_digits(self) -> int:
        return self._config.getint("output", "float_digits", fallback=17)
