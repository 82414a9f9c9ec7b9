"""
Command-line interface for spingate.

Subcommands:
    simulate  integrate one control configuration and write a CSV trajectory
    design    solve the gate conditions (and parity/stability/unit helpers)
    verify    run the eight-row truth table and write a JSON report
    sweep     scan one parameter for design residuals or gate fidelity

Exit codes: 0 success/pass, 1 gate failure, 2 usage, 3 numeric, 4 infeasible.
"""

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from spingate import __version__
from spingate.config import SpinGateConfig
from spingate.dynamics import CollinearModel, FieldSchedule, Model, NonCollinearModel
from spingate.errors import ArgumentError, SpinGateError
from spingate.spin_core import Axis3, ControlConfig, Spin3, encode_bit

logger = logging.getLogger(__name__)

MODEL_SCHEMES = ("collinear", "noncollinear")
DESIGN_SCHEMES = (
    "collinear-a0", "collinear-aniso", "noncollinear", "parity", "stability", "units",
)
SWEEP_PARAMS = ("n", "m", "a", "h-perp", "phi", "t-g", "eta")
INTEGER_PARAMS = ("n", "m")


def _setup_logging(verbose: bool = False) -> None:
    """Configure logging for CLI output."""
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(message)s" if not verbose else "%(levelname)s: %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _get_config(args: argparse.Namespace) -> SpinGateConfig:
    """Build SpinGateConfig from CLI args."""
    base_path = getattr(args, "base_path", None)
    if base_path:
        return SpinGateConfig(base_path=Path(base_path))
    return SpinGateConfig()


def _emit_text(text: str, out: Optional[Path]) -> None:
    """Write machine output to ``out``, or stdout when no path is given."""
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="") as f:
        f.write(text)
    logger.info("Wrote %s", out)


def _emit_json(data: object, out: Optional[Path]) -> None:
    _emit_text(json.dumps(data, indent=2) + "\n", out)


# ─── Run configuration ───────────────────────────────────────────────

@dataclass
class RunConfig:
    """Validated settings for one command, resolved from flags and the INI file."""

    command: str
    model: Optional[Model]
    config: Optional[ControlConfig]
    schedule: FieldSchedule
    out: Optional[Path]
    svg: Optional[Path]
    dt: float
    threshold: float
    relax_threshold: float
    threads: int
    float_digits: int
    max_samples: int


def _resolve_phi(args: argparse.Namespace) -> Optional[float]:
    phi = getattr(args, "phi", None)
    phi_deg = getattr(args, "phi_deg", None)
    if phi_deg is not None:
        return math.radians(phi_deg)
    return phi


def _build_model(args: argparse.Namespace, scheme: str) -> Model:
    """Model from flags; dataclass validation raises ArgumentError on bad values."""
    if scheme == "collinear":
        h_perp = 0.0 if args.h_perp is None else args.h_perp
        return CollinearModel(a=args.a, h_par=args.h_par, h_perp=h_perp, eta=args.eta)
    phi = _resolve_phi(args)
    if phi is None:
        raise ArgumentError("The noncollinear scheme needs --phi or --phi-deg")
    return NonCollinearModel(phi=phi, a=args.a, eta=args.eta)


def _check_finite(name: str, value: Optional[float]) -> None:
    if value is not None and not math.isfinite(value):
        raise ArgumentError(f"{name} must be finite, got {value!r}")


def _run_config(
    args: argparse.Namespace, settings: SpinGateConfig, model: Optional[Model] = None
) -> RunConfig:
    """Validate every numeric flag before any computation starts."""
    for name in ("a", "h_par", "h_perp", "eta", "phi", "phi_deg", "t_end", "t_off", "t_g",
                 "relax", "dt", "threshold", "relax_threshold"):
        _check_finite(f"--{name.replace('_', '-')}", getattr(args, name, None))

    dt = args.dt if getattr(args, "dt", None) is not None else settings.dt
    if dt <= 0.0:
        raise ArgumentError(f"--dt must be > 0, got {dt!r}")
    threshold = getattr(args, "threshold", None)
    threshold = settings.threshold if threshold is None else threshold
    if not 0.0 < threshold <= 1.0:
        raise ArgumentError(f"--threshold must lie in (0, 1], got {threshold!r}")
    relax_threshold = getattr(args, "relax_threshold", None)
    relax_threshold = settings.relax_threshold if relax_threshold is None else relax_threshold
    if not 0.0 < relax_threshold <= 1.0:
        raise ArgumentError(f"--relax-threshold must lie in (0, 1], got {relax_threshold!r}")
    threads = getattr(args, "threads", None)
    threads = settings.threads if threads is None else threads
    if threads < 1:
        raise ArgumentError(f"--threads must be >= 1, got {threads!r}")

    t_off = getattr(args, "t_off", None)
    schedule = FieldSchedule(t_off) if t_off is not None else FieldSchedule.always_on()
    label = getattr(args, "config", None)
    out = getattr(args, "out", None)
    svg = getattr(args, "svg", None)

    return RunConfig(
        command=args.command,
        model=model,
        config=ControlConfig.from_label(label) if label else None,
        schedule=schedule,
        out=Path(out) if out else None,
        svg=Path(svg) if svg else None,
        dt=dt,
        threshold=threshold,
        relax_threshold=relax_threshold,
        threads=threads,
        float_digits=settings.float_digits,
        max_samples=settings.max_samples,
    )


def _fmt(value: Any, digits: int) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{value:.{digits}g}"


# ─── Command Handlers ────────────────────────────────────────────────

def cmd_simulate(args: argparse.Namespace) -> int:
    """Integrate one configuration and write the trajectory CSV."""
    from spingate.dynamics import integrate

    settings = _get_config(args)
    model = _build_model(args, args.scheme)
    run = _run_config(args, settings, model)
    if args.t_end <= 0.0:
        raise ArgumentError(f"--t-end must be > 0, got {args.t_end!r}")
    if run.dt > args.t_end:
        raise ArgumentError(f"--dt {run.dt!r} exceeds --t-end {args.t_end!r}")
    assert run.config is not None and run.out is not None

    s0 = Spin3(*args.s0) if args.s0 else encode_bit(args.target, Axis3.z_axis())
    trajectory = integrate(
        model,
        run.config,
        s0,
        schedule=run.schedule,
        t_end=args.t_end,
        dt=run.dt,
        max_samples=run.max_samples,
    )
    trajectory.to_csv(run.out, digits=run.float_digits)
    logger.info(
        "Simulated %s [%s] to t=%g: %d samples, final z=%.6f",
        model.scheme, run.config.label, args.t_end, len(trajectory), trajectory.final.z,
    )
    logger.debug(
        "Norm error %.3g, energy drift %.3g",
        trajectory.max_norm_error(), trajectory.max_energy_drift(),
    )

    if run.svg is not None:
        from spingate.render import write_projection_svg

        write_projection_svg(trajectory, run.svg)
        logger.info("Wrote %s", run.svg)
    return 0


def _require(args: argparse.Namespace, scheme: str, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise ArgumentError(f"--scheme {scheme} needs {', '.join(missing)}")


def cmd_design(args: argparse.Namespace) -> int:
    """Solve gate conditions and print JSON."""
    from spingate import design

    settings = _get_config(args)
    scheme = args.scheme
    out = Path(args.out) if args.out else None
    for name in ("a", "h_perp", "h_par", "h_tilde", "eta", "J", "S", "g_s", "t_g", "A"):
        _check_finite(f"--{name.replace('_', '-')}", getattr(args, name, None))

    result: Dict[str, Any]
    if scheme == "collinear-a0":
        result = design.design_collinear_a0(args.n, args.m).to_dict()
    elif scheme == "noncollinear":
        result = design.design_noncollinear(
            args.n,
            args.m,
            args.a,
            phi_margin=settings.phi_margin,
            max_iter=settings.max_iter,
        ).to_dict()
    elif scheme == "collinear-aniso":
        _require(args, scheme, "h_perp")
        result = design.design_collinear_aniso(
            args.a,
            args.h_perp,
            args.h_par,
            args.n,
            grid=settings.turning_grid,
            nodes=settings.gauss_nodes,
            xtol=settings.bisect_xtol,
        ).to_dict()
    elif scheme == "parity":
        result = design.parity_obstruction(args.bound).to_dict()
    elif scheme == "stability":
        _require(args, scheme, "h_tilde")
        result = design.pole_stability(args.a, args.h_tilde, args.eta).to_dict()
    else:
        _require(args, scheme, "J", "t_g")
        result = design.to_physical_units(args.J, args.S, args.g_s, args.t_g, args.A).to_dict()

    _emit_json(result, out)
    return 0


def _auto_gate(args: argparse.Namespace, settings: SpinGateConfig) -> Tuple[Model, float]:
    """Model and gate time taken from the matching designer."""
    from spingate.analytics import half_period_flip
    from spingate.design import design_collinear_a0, design_noncollinear

    if args.scheme == "noncollinear":
        sol = design_noncollinear(
            args.n, args.m, args.a, phi_margin=settings.phi_margin, max_iter=settings.max_iter
        )
        assert sol.phi is not None
        logger.info("Designed phi=%.12g (%.4f deg), t_G=%.12g", sol.phi, math.degrees(sol.phi),
                    sol.t_G)
        return NonCollinearModel(phi=sol.phi, a=args.a, eta=args.eta), sol.t_G

    if args.a == 0.0:
        sol = design_collinear_a0(args.n, args.m)
        assert sol.h_perp is not None
        logger.info("Designed h_perp=%.12g, t_G=%.12g (residual %.3g)",
                    sol.h_perp, sol.t_G, sol.residual)
        return CollinearModel(a=0.0, h_par=-2.0, h_perp=sol.h_perp, eta=args.eta), sol.t_G

    # anisotropic collinear: stop the drive once [11] has flipped
    if args.h_perp is None:
        raise ArgumentError("--auto with a > 0 needs --h-perp")
    if args.h_par != -2.0:
        raise ArgumentError("--auto with a > 0 needs --h-par -2 so the [11] field is transverse")
    model = CollinearModel(a=args.a, h_par=args.h_par, h_perp=args.h_perp, eta=args.eta)
    t_gate = (2 * args.n + 1) * half_period_flip(args.h_perp, args.a)
    logger.info("Flip time t_G=%.12g", t_gate)
    return model, t_gate


def cmd_verify(args: argparse.Namespace) -> int:
    """Run the truth table; exit 0 on pass, 1 on failure."""
    from spingate.verify import run_truth_table

    settings = _get_config(args)
    if args.relax < 0.0:
        raise ArgumentError(f"--relax must be >= 0, got {args.relax!r}")
    run = _run_config(args, settings)
    if args.auto:
        model, t_gate = _auto_gate(args, settings)
    else:
        model = _build_model(args, args.scheme)
        t_gate = args.t_g
        if not t_gate > 0.0:
            raise ArgumentError(f"--t-g must be > 0, got {t_gate!r}")
    run.model = model

    report = run_truth_table(
        model,
        t_gate,
        schedule=run.schedule,
        relax_time=args.relax,
        dt=min(run.dt, t_gate),
        threshold=run.threshold,
        relax_threshold=run.relax_threshold,
        workers=run.threads,
    )
    _emit_json(report.to_dict(), run.out)

    if report.passed:
        logger.info("PASS: max projection error %.3g", report.max_proj_error)
        return 0
    logger.info("FAIL: %d of 8 rows wrong", len(report.failed_rows()))
    return 1


def _grid(args: argparse.Namespace) -> List[float]:
    if args.steps < 1:
        raise ArgumentError(f"--steps must be >= 1, got {args.steps!r}")
    _check_finite("--from", args.start)
    _check_finite("--to", args.stop)
    if args.steps == 1:
        values = [args.start]
    else:
        values = list(np.linspace(args.start, args.stop, args.steps))
    if args.param in INTEGER_PARAMS:
        return sorted({float(round(v)) for v in values})
    return sorted(float(v) for v in values)


def _gate_point(job: Tuple[Any, ...]) -> Tuple[float, bool]:
    from spingate.verify import run_truth_table

    model, t_gate, schedule, relax, dt, threshold, relax_threshold = job
    report = run_truth_table(
        model, t_gate, schedule, relax, min(dt, t_gate), threshold, relax_threshold, workers=1
    )
    return report.max_proj_error, report.passed


def _design_sweep_rows(
    args: argparse.Namespace, run: RunConfig, values: Sequence[float], settings: SpinGateConfig
) -> Tuple[List[str], List[List[str]]]:
    from spingate.design import evaluate_designs

    allowed = {
        "collinear-a0": ("n", "m"),
        "noncollinear": ("n", "m", "a"),
        "collinear-aniso": ("n", "a", "h-perp"),
    }
    if args.scheme not in allowed:
        raise ArgumentError(
            f"--metric residual needs a designer scheme ({', '.join(allowed)}), got {args.scheme}"
        )
    if args.param not in allowed[args.scheme]:
        raise ArgumentError(
            f"--scheme {args.scheme} sweeps {', '.join(allowed[args.scheme])}, not {args.param}"
        )

    points: List[Dict[str, Any]] = []
    for value in values:
        if args.scheme == "collinear-a0":
            point: Dict[str, Any] = {"n": args.n, "m": args.m}
        elif args.scheme == "noncollinear":
            point = {"n": args.n, "m": args.m, "a": args.a,
                     "phi_margin": settings.phi_margin, "max_iter": settings.max_iter}
        else:
            if args.h_perp is None and args.param != "h-perp":
                raise ArgumentError("--scheme collinear-aniso needs --h-perp")
            point = {"n": args.n, "a": args.a, "h_perp": args.h_perp, "h_par": args.h_par,
                     "grid": settings.turning_grid, "nodes": settings.gauss_nodes,
                     "xtol": settings.bisect_xtol}
        key = args.param.replace("-", "_")
        point[key] = int(value) if args.param in INTEGER_PARAMS else value
        points.append(point)

    solutions = evaluate_designs(args.scheme, points, run.threads)
    digits = run.float_digits
    param = args.param.replace("-", "_")
    columns = [c for c in ("n", "m", "l", "h_perp", "phi", "t_G", "residual") if c != param]
    rows: List[List[str]] = []
    for value, sol in zip(values, solutions):
        if sol is None:
            logger.info("%s=%g: infeasible, skipped", args.param, value)
            continue
        fields = {
            "n": sol.n, "m": sol.m, "l": sol.l, "h_perp": sol.h_perp, "phi": sol.phi,
            "t_G": sol.t_G, "residual": sol.residual,
        }
        swept = int(value) if args.param in INTEGER_PARAMS else value
        rows.append([_fmt(swept, digits)] + [_fmt(fields[c], digits) for c in columns])
    return [param] + columns, rows


def _gate_sweep_rows(
    args: argparse.Namespace, run: RunConfig, values: Sequence[float]
) -> Tuple[List[str], List[List[str]]]:
    from spingate.workers import map_ordered

    if args.scheme not in MODEL_SCHEMES:
        raise ArgumentError("--metric proj-error needs --scheme collinear or noncollinear")
    if args.param in INTEGER_PARAMS:
        raise ArgumentError(f"--metric proj-error cannot sweep {args.param}")
    if args.param != "t-g" and args.t_g is None:
        raise ArgumentError("--metric proj-error needs --t-g unless sweeping t-g")

    jobs = []
    for value in values:
        overrides = argparse.Namespace(**vars(args))
        t_gate = args.t_g
        if args.param == "t-g":
            t_gate = value
        elif args.param == "phi":
            overrides.phi, overrides.phi_deg = value, None
        else:
            setattr(overrides, args.param.replace("-", "_"), value)
        if not t_gate > 0.0:
            raise ArgumentError(f"Gate time must be > 0, got {t_gate!r}")
        model = _build_model(overrides, args.scheme)
        jobs.append((model, t_gate, run.schedule, args.relax, run.dt, run.threshold,
                     run.relax_threshold))

    results = map_ordered(_gate_point, jobs, run.threads)
    digits = run.float_digits
    header = [args.param.replace("-", "_"), "max_proj_error", "pass"]
    rows = [
        [_fmt(value, digits), _fmt(err, digits), _fmt(passed, digits)]
        for value, (err, passed) in zip(values, results)
    ]
    return header, rows


def cmd_sweep(args: argparse.Namespace) -> int:
    """Scan one parameter and write a CSV sorted by parameter value."""
    settings = _get_config(args)
    run = _run_config(args, settings)
    values = _grid(args)

    if args.metric == "residual":
        header, rows = _design_sweep_rows(args, run, values, settings)
    else:
        header, rows = _gate_sweep_rows(args, run, values)

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _emit_text(buffer.getvalue(), run.out)
    logger.info("Swept %s over %d points", args.param, len(values))
    return 0


# ─── Argument Parser ─────────────────────────────────────────────────

def _add_model_args(parser: argparse.ArgumentParser, phi: bool = True) -> None:
    parser.add_argument("--a", type=float, default=0.0, help="Target easy-axis anisotropy")
    parser.add_argument("--h-par", dest="h_par", type=float, default=-2.0,
                        help="Longitudinal field (collinear, default: -2)")
    parser.add_argument("--h-perp", dest="h_perp", type=float, default=None,
                        help="Transverse drive field (collinear)")
    parser.add_argument("--eta", type=float, default=0.0, help="Gilbert damping")
    if phi:
        group = parser.add_mutually_exclusive_group()
        group.add_argument("--phi", type=float, help="Control axis half angle in radians")
        group.add_argument("--phi-deg", dest="phi_deg", type=float,
                           help="Control axis half angle in degrees")


def _add_run_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dt", type=float, help="Integrator step (default from config)")
    parser.add_argument("--threshold", type=float, help="Decode threshold in (0, 1]")
    parser.add_argument("--relax-threshold", dest="relax_threshold", type=float,
                        help="Pole projection required after damped relaxation")
    parser.add_argument("--t-off", dest="t_off", type=float, help="Switch the drive off at t")
    parser.add_argument("--relax", type=float, default=0.0,
                        help="Drive-off relaxation time after t_G (default: 0)")
    parser.add_argument("--threads", type=int, help="Worker processes (default: all cores)")


def build_parser() -> argparse.ArgumentParser:
    """Build the CLI argument parser."""
    parser = argparse.ArgumentParser(
        prog="spingate",
        description="Classical-spin Toffoli gate simulator and designer",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=(
            "Examples:\n"
            "  spingate design --scheme collinear-a0 --n 0 --m 5\n"
            "  spingate design --scheme noncollinear --n 1 --m 1\n"
            "  spingate simulate --scheme collinear --a 2.5 --h-perp 2.7 --config 11 \\\n"
            "      --t-end 3.6 --out run.csv\n"
            "  spingate verify --scheme noncollinear --n 1 --m 1 --auto\n"
            "  spingate verify --scheme collinear --a 2.5 --h-perp 2.7 --eta 0.01 \\\n"
            "      --auto --relax 400\n"
            "  spingate sweep --scheme collinear-a0 --param m --from 1 --to 50 --steps 50\n"
        ),
    )

    parser.add_argument(
        "--version", action="version", version=f"spingate {__version__}"
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="Enable verbose output"
    )
    parser.add_argument(
        "--base-path", dest="base_path", help="Override spingate base directory"
    )

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # ─── simulate ─────────────────────────────
    sim_parser = subparsers.add_parser("simulate", help="Integrate one control configuration")
    sim_parser.add_argument("--scheme", choices=MODEL_SCHEMES, required=True)
    _add_model_args(sim_parser)
    sim_parser.add_argument("--config", choices=["00", "01", "10", "11"], required=True,
                            help="Control bits c1 c2")
    sim_parser.add_argument("--target", type=int, choices=[0, 1], default=1,
                            help="Initial target bit (default: 1, north pole)")
    sim_parser.add_argument("--s0", type=float, nargs=3, metavar=("X", "Y", "Z"),
                            help="Explicit initial target spin")
    sim_parser.add_argument("--t-end", dest="t_end", type=float, required=True)
    sim_parser.add_argument("--dt", type=float, help="Integrator step (default from config)")
    sim_parser.add_argument("--t-off", dest="t_off", type=float,
                            help="Switch the drive off at t")
    sim_parser.add_argument("--out", required=True, help="Trajectory CSV path")
    sim_parser.add_argument("--svg", help="Also draw trajectory projections to this SVG")

    # ─── design ───────────────────────────────
    design_parser = subparsers.add_parser("design", help="Solve gate conditions")
    design_parser.add_argument("--scheme", choices=DESIGN_SCHEMES, required=True)
    design_parser.add_argument("--n", type=int, default=0, help="[11] half-period count")
    design_parser.add_argument("--m", type=int, default=1, help="[01] period count")
    design_parser.add_argument("--a", type=float, default=0.0, help="Anisotropy")
    design_parser.add_argument("--h-perp", dest="h_perp", type=float)
    design_parser.add_argument("--h-par", dest="h_par", type=float, default=-2.0)
    design_parser.add_argument("--bound", type=int, default=200, help="Parity search bound")
    design_parser.add_argument("--h-tilde", dest="h_tilde", type=float,
                               help="Net z-field for stability")
    design_parser.add_argument("--eta", type=float, default=0.0)
    design_parser.add_argument("--J", dest="J", type=float, help="Exchange in kelvin")
    design_parser.add_argument("--S", dest="S", type=float, default=4.0, help="Spin length")
    design_parser.add_argument("--g-s", dest="g_s", type=float, default=2.0)
    design_parser.add_argument("--t-g", dest="t_g", type=float, help="Dimensionless gate time")
    design_parser.add_argument("--A", dest="A", type=float,
                               help="Anisotropy in kelvin (default: 2J)")
    design_parser.add_argument("--out", help="JSON output path (default: stdout)")

    # ─── verify ───────────────────────────────
    verify_parser = subparsers.add_parser("verify", help="Run the truth table")
    verify_parser.add_argument("--scheme", choices=MODEL_SCHEMES, required=True)
    _add_model_args(verify_parser)
    timing = verify_parser.add_mutually_exclusive_group(required=True)
    timing.add_argument("--t-g", dest="t_g", type=float, help="Gate time")
    timing.add_argument("--auto", action="store_true",
                        help="Take the model and gate time from the designer")
    verify_parser.add_argument("--n", type=int, default=0)
    verify_parser.add_argument("--m", type=int, default=1)
    _add_run_args(verify_parser)
    verify_parser.add_argument("--out", help="JSON report path (default: stdout)")

    # ─── sweep ────────────────────────────────
    sweep_parser = subparsers.add_parser("sweep", help="Scan one parameter")
    sweep_parser.add_argument(
        "--scheme", required=True,
        choices=["collinear", "noncollinear", "collinear-a0", "collinear-aniso"],
    )
    sweep_parser.add_argument("--param", choices=SWEEP_PARAMS, required=True)
    sweep_parser.add_argument("--from", dest="start", type=float, required=True)
    sweep_parser.add_argument("--to", dest="stop", type=float, required=True)
    sweep_parser.add_argument("--steps", type=int, required=True)
    sweep_parser.add_argument("--metric", choices=["residual", "proj-error"], default="residual")
    _add_model_args(sweep_parser)
    sweep_parser.add_argument("--n", type=int, default=0)
    sweep_parser.add_argument("--m", type=int, default=1)
    sweep_parser.add_argument("--t-g", dest="t_g", type=float, help="Gate time")
    _add_run_args(sweep_parser)
    sweep_parser.add_argument("--out", help="CSV output path (default: stdout)")

    return parser


# ─── Main Entry Point ────────────────────────────────────────────────

def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) if not isinstance(exc.code, str) else 2

    _setup_logging(verbose=getattr(args, "verbose", False))

    command = args.command

    if not command:
        parser.print_help()
        return 0

    handlers = {
        "simulate": cmd_simulate,
        "design": cmd_design,
        "verify": cmd_verify,
        "sweep": cmd_sweep,
    }

    handler = handlers.get(command)
    if not handler:
        parser.print_help()
        return 2

    try:
        return handler(args)
    except KeyboardInterrupt:
        print("\n\nInterrupted.", file=sys.stderr)
        return 130
    except SpinGateError as e:
        if getattr(args, "verbose", False):
            logger.exception("Error: %s", e)
        else:
            print(f"Error: {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        if getattr(args, "verbose", False):
            logger.exception("Error: %s", e)
        else:
            print(f"Error: {e}", file=sys.stderr)
            print("   Run with -v for details.", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
