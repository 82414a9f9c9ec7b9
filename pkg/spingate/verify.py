"""
Truth-table verification of the spin Toffoli gate.

Each of the eight input rows encodes the controls and the target,
drives the target up to the gate time, optionally lets it relax with the
drive off, and decodes the result on the target's z easy axis.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from spingate.dynamics import DEFAULT_DT, FieldSchedule, Model, integrate
from spingate.errors import ArgumentError
from spingate.spin_core import (
    DEFAULT_THRESHOLD,
    Axis3,
    BitValue,
    ControlConfig,
    Spin3,
    decode_bit,
    encode_bit,
    toffoli_expected,
)
from spingate.workers import map_ordered

logger = logging.getLogger(__name__)

DEFAULT_RELAX_THRESHOLD = 0.999

# (c1, c2, t) in lexicographic order
TRUTH_TABLE_INPUTS: Tuple[Tuple[int, int, int], ...] = tuple(
    (c1, c2, t) for c1 in (0, 1) for c2 in (0, 1) for t in (0, 1)
)

Bits = Tuple[int, int, int]


@dataclass(frozen=True)
class RowResult:
    """Outcome of one input row."""

    c1: int
    c2: int
    t_in: int
    t_expected: int
    s_final: Spin3
    decoded: BitValue
    proj_error: float
    relaxed: bool

    @property
    def passed(self) -> bool:
        return self.decoded.bit == self.t_expected and self.relaxed

    @property
    def inputs(self) -> Bits:
        return (self.c1, self.c2, self.t_in)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "c1": self.c1,
            "c2": self.c2,
            "t_in": self.t_in,
            "t_expected": self.t_expected,
            "s_final": list(self.s_final.as_tuple()),
            "decoded": self.decoded.bit,
            "proj_error": self.proj_error,
        }


@dataclass
class GateReport:
    """All eight rows plus the run settings."""

    scheme: str
    params: Dict[str, float]
    t_G: float
    rows: List[RowResult]
    relax_time: float = 0.0
    threshold: float = DEFAULT_THRESHOLD

    def __post_init__(self) -> None:
        if len(self.rows) != 8:
            raise ArgumentError(f"A gate report needs 8 rows, got {len(self.rows)}")
        self.rows = sorted(self.rows, key=lambda r: r.inputs)

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    @property
    def max_proj_error(self) -> float:
        return max(row.proj_error for row in self.rows)

    def failed_rows(self) -> List[RowResult]:
        return [row for row in self.rows if not row.passed]

    def output_map(self) -> Dict[Bits, Tuple[int, int, Optional[int]]]:
        """Input bits to output bits; controls pass through unchanged."""
        return {row.inputs: (row.c1, row.c2, row.decoded.bit) for row in self.rows}

    def is_permutation(self) -> bool:
        outputs = list(self.output_map().values())
        return all(o[2] is not None for o in outputs) and len(set(outputs)) == len(outputs)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "scheme": self.scheme,
            "params": dict(self.params),
            "t_G": self.t_G,
            "rows": [row.to_dict() for row in self.rows],
            "pass": self.passed,
            "max_proj_error": self.max_proj_error,
        }


def run_row(
    model: Model,
    bits: Bits,
    t_G: float,
    schedule: Optional[FieldSchedule] = None,
    relax_time: float = 0.0,
    dt: float = DEFAULT_DT,
    threshold: float = DEFAULT_THRESHOLD,
    relax_threshold: float = DEFAULT_RELAX_THRESHOLD,
) -> RowResult:
    """Drive one row to ``t_G`` and relax it for ``relax_time`` with the drive off."""
    c1, c2, t_in = bits
    expected = toffoli_expected(c1, c2, t_in)
    config = ControlConfig.from_bits(c1, c2)
    axis = Axis3.z_axis()

    trajectory = integrate(
        model, config, encode_bit(t_in, axis), schedule=schedule, t_end=t_G, dt=dt
    )
    final = trajectory.final
    if relax_time > 0.0:
        trajectory = integrate(
            model,
            config,
            final,
            schedule=FieldSchedule.off(),
            t_end=relax_time,
            dt=min(dt, relax_time),
            t0=t_G,
        )
        final = trajectory.final

    projection = final.dot(encode_bit(expected, axis))
    # damped relaxation must settle onto the pole, not just decode
    relaxed = True
    if relax_time > 0.0 and model.eta > 0.0:
        relaxed = projection > relax_threshold

    return RowResult(
        c1=c1,
        c2=c2,
        t_in=t_in,
        t_expected=expected,
        s_final=final,
        decoded=decode_bit(final, axis, threshold),
        proj_error=1.0 - abs(projection),
        relaxed=relaxed,
    )


def _row_task(job: Tuple[Any, ...]) -> RowResult:
    model, bits, t_G, schedule, relax_time, dt, threshold, relax_threshold = job
    return run_row(model, bits, t_G, schedule, relax_time, dt, threshold, relax_threshold)


def run_truth_table(
    model: Model,
    t_G: float,
    schedule: Optional[FieldSchedule] = None,
    relax_time: float = 0.0,
    dt: float = DEFAULT_DT,
    threshold: float = DEFAULT_THRESHOLD,
    relax_threshold: float = DEFAULT_RELAX_THRESHOLD,
    workers: Optional[int] = None,
) -> GateReport:
    """Run all eight rows, concurrently when ``workers`` > 1."""
    if not (math.isfinite(t_G) and t_G > 0.0):
        raise ArgumentError(f"t_G must be > 0, got {t_G!r}")
    if not (math.isfinite(relax_time) and relax_time >= 0.0):
        raise ArgumentError(f"relax_time must be >= 0, got {relax_time!r}")
    if not 0.0 < threshold <= 1.0:
        raise ArgumentError(f"threshold must lie in (0, 1], got {threshold!r}")
    if not 0.0 < relax_threshold <= 1.0:
        raise ArgumentError(f"relax_threshold must lie in (0, 1], got {relax_threshold!r}")
    schedule = schedule or FieldSchedule.always_on()

    logger.info(
        "Verifying %s gate: t_G=%.6g, drive %s, relax %.6g",
        model.scheme, t_G, schedule.describe(), relax_time,
    )
    jobs = [
        (model, bits, t_G, schedule, relax_time, dt, threshold, relax_threshold)
        for bits in TRUTH_TABLE_INPUTS
    ]
    rows = map_ordered(_row_task, jobs, workers)

    report = GateReport(
        scheme=model.scheme,
        params=model.params(),
        t_G=t_G,
        rows=rows,
        relax_time=relax_time,
        threshold=threshold,
    )
    for row in report.failed_rows():
        if row.decoded.bit == row.t_expected:
            logger.warning(
                "Row %d%d%d failed: decoded %d but missed the relaxation threshold %.6g "
                "(projection error %.3g)",
                row.c1, row.c2, row.t_in, row.t_expected, relax_threshold, row.proj_error,
            )
            continue
        logger.warning(
            "Row %d%d%d failed: expected %d, decoded %s (projection error %.3g)",
            row.c1, row.c2, row.t_in, row.t_expected, row.decoded.value, row.proj_error,
        )
    return report
