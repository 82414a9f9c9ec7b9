"""
SVG projections of target trajectories.

Draws the (x, z) and (y, z) orthographic projections on a unit-circle
backdrop. Needs the optional ``plot`` extra (matplotlib).
"""

import logging
from pathlib import Path
from typing import Tuple, Union

import numpy as np

from spingate.dynamics import Trajectory
from spingate.errors import SpinGateError

logger = logging.getLogger(__name__)


def _check_plot_dependencies() -> Tuple[bool, str]:
    """Check if the plotting dependency is installed."""
    try:
        import matplotlib  # noqa: F401
    except ImportError:
        return False, (
            "Missing plot dependency: matplotlib. "
            "Install with: pip install spingate[plot]"
        )
    return True, "Plot dependencies available"


def write_projection_svg(trajectory: Trajectory, path: Union[str, Path]) -> Path:
    """Write the two projections of ``trajectory`` as a static SVG file.

    Output is byte-stable for identical trajectories (fixed hash salt,
    no date metadata).
    """
    ok, msg = _check_plot_dependencies()
    if not ok:
        raise SpinGateError(msg)

    import matplotlib
    from matplotlib.figure import Figure

    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)

    theta = np.linspace(0.0, 2.0 * np.pi, 361)
    spins = trajectory.spins
    panels = (("x", 0), ("y", 1))

    with matplotlib.rc_context({"svg.hashsalt": "spingate", "svg.fonttype": "none"}):
        fig = Figure(figsize=(8.0, 4.0))
        axes = fig.subplots(1, 2)
        for ax, (label, column) in zip(axes, panels):
            ax.plot(np.cos(theta), np.sin(theta), color="0.75", linewidth=0.8)
            ax.plot(spins[:, column], spins[:, 2], color="tab:blue", linewidth=1.0)
            ax.plot(spins[0, column], spins[0, 2], "o", color="tab:green", markersize=4)
            ax.plot(spins[-1, column], spins[-1, 2], "s", color="tab:red", markersize=4)
            ax.set_xlim(-1.1, 1.1)
            ax.set_ylim(-1.1, 1.1)
            ax.set_aspect("equal")
            ax.set_xlabel(f"s_{label}")
            ax.set_ylabel("s_z")
        fig.suptitle(
            f"{trajectory.model.scheme} [{trajectory.config.label}]  "
            f"t = {trajectory.times[0]:.4g} .. {trajectory.times[-1]:.4g}"
        )
        fig.savefig(out, format="svg", metadata={"Date": None})

    logger.debug("Wrote projection SVG %s", out)
    return out
