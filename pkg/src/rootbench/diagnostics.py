"""Post-hoc analysis of iteration traces.

Per-step order estimates use the log ratio of successive errors against a
known root.  Steps are kept when both errors clear the rounding floor and lie
on the same side of 1, so the ratio is positive; a pair straddling 1 has no
meaningful order.  ``unit_interval_only`` restricts the estimate to errors
below 1, which drops the pre-asymptotic phase of runs started far away.
"""

from __future__ import annotations

import enum
import math
import sys
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import InsufficientResolution, NoUsableSteps
from .solver import IterationTrace, SolverConfig, SolverOutcome, Status

EPS = sys.float_info.epsilon

OSCILLATION_WINDOW = 20
CAUCHY_WINDOW = 10


class Label(str, enum.Enum):
    CONVERGED = "Converged"
    OSCILLATES = "Oscillates"
    DIVERGES = "Diverges"
    FAILS = "Fails"
    MAX_ITERATIONS = "MaxIterations"


@dataclass(frozen=True)
class RateEstimate:
    per_step: tuple[tuple[int, float], ...]
    geometric_mean: Optional[float]
    usable_count: int

    @property
    def final_alpha(self) -> Optional[float]:
        return self.per_step[-1][1] if self.per_step else None

    def to_json(self) -> dict:
        return {
            "per_step": [[k, alpha] for k, alpha in self.per_step],
            "geometric_mean": self.geometric_mean,
            "usable_count": self.usable_count,
        }


def _usable_pair(e_k: float, e_next: float, floor: float, unit_interval_only: bool) -> bool:
    if not (e_k > floor and e_next > floor) or e_k == 1.0 or e_next == 1.0:
        return False
    if unit_interval_only:
        return e_k < 1.0 and e_next < 1.0
    return (e_k < 1.0) == (e_next < 1.0)


def estimate_order(
    trace: IterationTrace,
    reference_root: float,
    unit_interval_only: bool = False,
    log: Callable[[float], float] = math.log,
) -> RateEstimate:
    """Per-step convergence order ``log|e_{k+1}| / log|e_k|`` and its geometric mean.

    ``log`` only exists so callers can confirm base independence.

    Raises:
        NoUsableSteps: if every consecutive pair is filtered out.
    """
    if len(trace) < 2:
        raise ValueError("order estimation needs at least two trace steps")
    floor = 100 * EPS * max(abs(reference_root), 1.0)
    errors = [abs(x - reference_root) for x in trace.xs]
    per_step = []
    for k in range(len(errors) - 1):
        e_k, e_next = errors[k], errors[k + 1]
        if _usable_pair(e_k, e_next, floor, unit_interval_only):
            alpha = log(e_next) / log(e_k)
            if alpha > 0:
                per_step.append((k, alpha))
    if not per_step:
        raise NoUsableSteps("no consecutive pair of errors above the precision floor")
    return RateEstimate(
        per_step=tuple(per_step),
        geometric_mean=geometric_mean_rate(per_step),
        usable_count=len(per_step),
    )


def geometric_mean_rate(estimate: RateEstimate | list[tuple[int, float]]) -> float:
    per_step = estimate.per_step if isinstance(estimate, RateEstimate) else estimate
    logs = [math.log(alpha) for _, alpha in per_step if alpha > 0]
    if not logs:
        raise NoUsableSteps("no positive order estimates")
    return math.exp(math.fsum(logs) / len(logs))


def classify_outcome(
    trace: IterationTrace, outcome: SolverOutcome, config: SolverConfig
) -> Label:
    """Map a solver outcome onto the Converged / Oscillates / Diverges / Fails vocabulary.

    A run that hit the iteration cap is called oscillating only when its recent
    iterates stay bounded and never take a step small enough to suggest slow
    convergence; otherwise it is left as MaxIterations.
    """
    direct = {
        Status.CONVERGED: Label.CONVERGED,
        Status.OSCILLATING: Label.OSCILLATES,
        Status.DIVERGED: Label.DIVERGES,
        Status.FAILED: Label.FAILS,
    }
    if outcome.status in direct:
        return direct[outcome.status]

    xs = trace.xs
    recent = xs[-OSCILLATION_WINDOW:]
    bounded = all(abs(x) <= config.divergence_threshold for x in recent)
    tail = xs[-(CAUCHY_WINDOW + 1):]
    steps = [abs(b - a) for a, b in zip(tail, tail[1:])]
    if bounded and steps and min(steps) > 10 * config.tol:
        return Label.OSCILLATES
    return Label.MAX_ITERATIONS


def error_ratio_constant(
    trace: IterationTrace, reference_root: float, c1: float, c2: float, c3: float
) -> tuple[float, float]:
    """Measured ``|e_{k+1} / (e_k e_{k-1} e_{k-2})|`` against ``|c2^2 - c1 c3| / c1^2``.

    The measurement is taken at the last step where all four errors are still
    above ``1e-11 * max(|r|, 1)``.  ``c_n`` are the Taylor coefficients
    ``f^(n)(r) / n!`` at the root.
    """
    predicted = abs(c2 * c2 - c1 * c3) / (c1 * c1)
    floor = 1e-11 * max(abs(reference_root), 1.0)
    errors = [abs(x - reference_root) for x in trace.xs]
    measured = None
    for k in range(2, len(errors) - 1):
        window = errors[k - 2 : k + 2]
        if all(e > floor for e in window):
            measured = errors[k + 1] / (errors[k] * errors[k - 1] * errors[k - 2])
    if measured is None:
        raise InsufficientResolution(
            f"no four consecutive errors above {floor:g}; trace too short or too precise"
        )
    return measured, predicted
