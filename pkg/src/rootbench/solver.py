"""Step formulas and the iteration driver for the four root-finding methods.

Every step function is pure: it takes sampled points and returns the next
abscissa, raising :class:`DegenerateDenominator` when the divisor is too small
relative to the terms that produced it.  :func:`solve` owns the sliding window,
the stopping rules and the fallbacks.
"""

from __future__ import annotations

import cmath
import enum
import math
import sys
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .errors import (
    UnknownMethod,
    CoincidentAbscissae,
    DegenerateDenominator,
    InvalidStarts,
    MissingDerivative,
    NonFiniteEvaluation,
)

SMALLEST_NORMAL = sys.float_info.min

# Spacing, in units of relative machine epsilon, below which two iterates are
# treated as the same point when no further step can be formed.
STAGNATION_ULPS = 16

RealFunction = Callable[[float], float]


class Method(str, enum.Enum):
    SECANT = "secant"
    NEWTON = "newton"
    THREE_POINT = "three-point"
    MULLER = "muller"

    @property
    def arity(self) -> int:
        return {"secant": 2, "newton": 1, "three-point": 3, "muller": 3}[self.value]

    @classmethod
    def parse(cls, name: str) -> "Method":
        try:
            return cls(name.strip().lower().replace("_", "-"))
        except ValueError:
            raise UnknownMethod(f"unknown method {name!r}") from None


class Status(str, enum.Enum):
    CONVERGED = "Converged"
    OSCILLATING = "Oscillating"
    DIVERGED = "Diverged"
    FAILED = "Failed"
    MAX_ITERATIONS = "MaxIterations"


@dataclass(frozen=True)
class Point:
    x: float
    y: float


@dataclass(frozen=True)
class InclinationSlope:
    """Tangent of the inclination of the chord from a reference point to ``point``."""

    m: float

    @classmethod
    def between(cls, ref: Point, point: Point) -> "InclinationSlope":
        if point.x == ref.x:
            raise CoincidentAbscissae(f"slope undefined: both points at x={ref.x!r}")
        return cls((point.y - ref.y) / (point.x - ref.x))


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-15
    max_iter: int = 500
    divergence_threshold: float = 1e12
    denominator_guard: float = 1e-14

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ValueError(f"max_iter must be a positive integer, got {self.max_iter}")
        if not self.divergence_threshold > 1:
            raise ValueError(
                f"divergence_threshold must exceed 1, got {self.divergence_threshold}"
            )
        if not self.denominator_guard > 0:
            raise ValueError(
                f"denominator_guard must be positive, got {self.denominator_guard}"
            )


@dataclass(frozen=True)
class IterationTrace:
    """Ordered iterates of one run; the first ``len(starts)`` steps are the starts.

    ``fallback_steps`` lists the step indices produced by the secant fallback
    rather than by the method's own formula.
    """

    method: Method
    starts: tuple[float, ...]
    steps: tuple[tuple[int, Point], ...]
    fallback_steps: tuple[int, ...] = ()

    @property
    def xs(self) -> list[float]:
        return [p.x for _, p in self.steps]

    @property
    def ys(self) -> list[float]:
        return [p.y for _, p in self.steps]

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class SolverOutcome:
    status: Status
    iterations: int
    trace: IterationTrace
    root: Optional[float] = None
    failure_detail: Optional[str] = None


# -- step formulas ---------------------------------------------------------


def _require_distinct(*xs: float) -> None:
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            if xs[i] == xs[j]:
                raise CoincidentAbscissae(f"coincident abscissae at x={xs[i]!r}")


def three_point_step(p_ref: Point, p_mid: Point, p_new: Point, guard: float) -> float:
    """Next iterate of the three-point secant method.

    The oldest point ``p_ref`` is the reference from which the inclination
    slopes of ``p_mid`` and ``p_new`` are measured; a secant step is then taken
    in the (slope, y) plane and mapped back to x.

    Raises:
        CoincidentAbscissae: if any two abscissae are equal.
        DegenerateDenominator: if the denominator is negligible relative to
            its two terms.
    """
    _require_distinct(p_ref.x, p_mid.x, p_new.x)
    m_new = InclinationSlope.between(p_ref, p_new).m
    m_mid = InclinationSlope.between(p_ref, p_mid).m
    dy = p_new.y - p_mid.y
    # A flat chord in the (slope, y) plane has no crossing; the closed form would hide
    # this by returning p_ref.x.
    if abs(dy) <= guard * max(abs(p_new.y), abs(p_mid.y), SMALLEST_NORMAL):
        raise DegenerateDenominator(f"flat (slope, y) chord at x={p_new.x!r}")
    dm = m_new - m_mid
    lead = m_new * dy
    tail = p_new.y * dm
    denominator = lead - tail
    if abs(denominator) <= guard * max(abs(lead), abs(tail), SMALLEST_NORMAL):
        raise DegenerateDenominator(
            f"three-point denominator {denominator!r} at x={p_new.x!r}"
        )
    return p_ref.x - p_ref.y * dy / denominator


def secant_step(p_prev: Point, p_curr: Point, guard: float) -> float:
    _require_distinct(p_prev.x, p_curr.x)
    if p_curr.y == 0:
        return p_curr.x
    dy = p_curr.y - p_prev.y
    if abs(dy) <= guard * max(abs(p_curr.y), abs(p_prev.y), SMALLEST_NORMAL):
        raise DegenerateDenominator(f"flat secant between x={p_prev.x!r} and x={p_curr.x!r}")
    return p_curr.x - p_curr.y * (p_curr.x - p_prev.x) / dy


def newton_step(x: float, f_value: float, df_value: float, guard: float) -> float:
    if not math.isfinite(df_value):
        raise DegenerateDenominator(f"non-finite derivative at x={x!r}")
    if f_value == 0:
        return x
    if abs(df_value) <= guard * max(abs(f_value) / max(abs(x), 1.0), SMALLEST_NORMAL):
        raise DegenerateDenominator(f"vanishing derivative at x={x!r}")
    return x - f_value / df_value


def muller_step(p_a: Point, p_b: Point, p_c: Point, guard: float) -> tuple[float, bool]:
    """Step to the root of the parabola through three points nearest ``p_c``.

    Returns ``(x, complex_discriminant)``.  When the parabola has no real root
    the real part of the nearer complex root is returned with the flag set.
    """
    _require_distinct(p_a.x, p_b.x, p_c.x)
    h1 = p_b.x - p_a.x
    h2 = p_c.x - p_b.x
    d1 = (p_b.y - p_a.y) / h1
    d2 = (p_c.y - p_b.y) / h2
    # h1 + h2 can round to zero when the outer points nearly coincide.
    h12 = p_c.x - p_a.x
    a = (d2 - d1) / h12
    b = a * h2 + d2
    c = p_c.y
    if c == 0:
        return p_c.x, False

    span = max(abs(h1), abs(h2), abs(h12))
    level = max(abs(p_a.y), abs(p_b.y), abs(p_c.y), SMALLEST_NORMAL)
    if abs(a) * span * span <= guard * level and abs(b) * span <= guard * level:
        raise DegenerateDenominator(f"flat parabola at x={p_c.x!r}")

    disc = b * b - 4.0 * a * c
    if disc >= 0:
        root = math.sqrt(disc)
        denominator = b + root if b >= 0 else b - root
        if abs(denominator) <= guard * max(abs(b), root, SMALLEST_NORMAL):
            raise DegenerateDenominator(f"vanishing Muller denominator at x={p_c.x!r}")
        return p_c.x - 2.0 * c / denominator, False

    root = cmath.sqrt(disc)
    denominator = b + root if b >= 0 else b - root
    return (p_c.x - 2.0 * c / denominator).real, True


def seed_third_point(x0: float, x1: float, f: RealFunction) -> float:
    """Secant-derived third start point from two user-supplied ones."""
    if x0 == x1:
        raise InvalidStarts(f"seed points coincide at x={x0!r}")
    y0 = _evaluate(f, x0)
    y1 = _evaluate(f, x1)
    for x, y in ((x0, y0), (x1, y1)):
        if not math.isfinite(y):
            raise NonFiniteEvaluation(x)
    return secant_step(Point(x0, y0), Point(x1, y1), SolverConfig().denominator_guard)


# -- driver ----------------------------------------------------------------


def _evaluate(f: RealFunction, x: float) -> float:
    if not math.isfinite(x):
        return math.nan
    try:
        return float(f(x))
    except (ArithmeticError, ValueError):
        return math.nan


def _indistinguishable(a: float, b: float) -> bool:
    return abs(a - b) <= STAGNATION_ULPS * sys.float_info.epsilon * max(abs(a), abs(b))


def _float_two_cycle(points: list[Point]) -> bool:
    """True when the newest iterate repeats the one before last and the pair is
    only rounding apart: the iteration is bouncing between neighbouring floats."""
    if len(points) < 3:
        return False
    return points[-1].x == points[-3].x and _indistinguishable(points[-1].x, points[-2].x)


def solve(
    method: Method | str,
    f: RealFunction,
    starts: Sequence[float],
    config: SolverConfig | None = None,
    df: Optional[RealFunction] = None,
    seed_third: bool = False,
) -> SolverOutcome:
    """Iterate ``method`` from ``starts`` until a stopping rule fires.

    Newton consumes the first start, Secant the first two, the three-point and
    Muller methods the first three.  With ``seed_third`` (or when exactly two
    starts are given to a three-point method) the third start is derived by a
    secant step from the first two.
    """
    method = Method.parse(method) if isinstance(method, str) else method
    config = config or SolverConfig()
    starts = [float(s) for s in starts]

    if method is Method.NEWTON and df is None:
        raise MissingDerivative("Newton's method needs a derivative")
    if method.arity == 3 and (seed_third or len(starts) == 2):
        if len(starts) != 2:
            raise InvalidStarts(f"seeding needs exactly two starts, got {len(starts)}")
        starts.append(seed_third_point(starts[0], starts[1], f))
    if len(starts) < method.arity:
        raise InvalidStarts(
            f"{method.value} needs {method.arity} start(s), got {len(starts)}"
        )
    starts = starts[: method.arity]
    if len(set(starts)) != len(starts):
        raise InvalidStarts(f"start values must be distinct, got {starts}")
    if not all(math.isfinite(s) for s in starts):
        raise InvalidStarts(f"start values must be finite, got {starts}")

    points: list[Point] = []
    fallbacks: list[int] = []

    def outcome(status: Status, root=None, detail=None) -> SolverOutcome:
        trace = IterationTrace(
            method=method,
            starts=tuple(starts),
            steps=tuple(enumerate(points)),
            fallback_steps=tuple(fallbacks),
        )
        return SolverOutcome(
            status=status,
            iterations=len(points) - len(starts) if len(points) >= len(starts) else 0,
            trace=trace,
            root=root,
            failure_detail=detail,
        )

    for x in starts:
        y = _evaluate(f, x)
        if not math.isfinite(y):
            return outcome(Status.FAILED, detail=f"non-finite evaluation at start x={x!r}")
        points.append(Point(x, y))

    guard = config.denominator_guard
    complex_streak = 0

    for _ in range(config.max_iter):
        used_fallback = False
        try:
            if method is Method.NEWTON:
                p = points[-1]
                x_next = newton_step(p.x, p.y, _evaluate(df, p.x), guard)
            elif method is Method.SECANT:
                x_next = secant_step(points[-2], points[-1], guard)
            elif method is Method.THREE_POINT:
                try:
                    x_next = three_point_step(points[-3], points[-2], points[-1], guard)
                except (DegenerateDenominator, CoincidentAbscissae):
                    x_next = secant_step(points[-2], points[-1], guard)
                    used_fallback = True
            else:
                try:
                    x_next, flagged = muller_step(points[-3], points[-2], points[-1], guard)
                except (DegenerateDenominator, CoincidentAbscissae):
                    x_next, flagged = secant_step(points[-2], points[-1], guard), False
                    used_fallback = True
                complex_streak = complex_streak + 1 if flagged else 0
                if complex_streak >= 2:
                    return outcome(Status.FAILED, detail="complex step in Muller")
        except DegenerateDenominator as exc:
            if len(points) >= 2 and _indistinguishable(points[-1].x, points[-2].x):
                # Function values are pure rounding noise at this spacing.
                return outcome(Status.CONVERGED, root=points[-1].x)
            # Newton and Secant: a horizontal tangent or chord sends the step to infinity.
            if method in (Method.NEWTON, Method.SECANT):
                return outcome(Status.DIVERGED, detail=f"degenerate step: {exc}")
            return outcome(
                Status.FAILED, detail=f"repeated degenerate denominator: {exc}"
            )

        if used_fallback:
            fallbacks.append(len(points))

        if not math.isfinite(x_next):
            return outcome(Status.FAILED, detail=f"non-finite iterate after x={points[-1].x!r}")
        y_next = _evaluate(f, x_next)
        if not math.isfinite(y_next):
            return outcome(Status.FAILED, detail=f"non-finite evaluation at x={x_next!r}")

        previous = points[-1]
        points.append(Point(x_next, y_next))

        if (
            abs(x_next - previous.x) + abs(y_next) < config.tol
            or y_next == 0
            or x_next == previous.x
            or _float_two_cycle(points)
        ):
            return outcome(Status.CONVERGED, root=x_next)
        if abs(x_next) > config.divergence_threshold or abs(y_next) > config.divergence_threshold:
            return outcome(Status.DIVERGED, detail=f"|x| or |f| exceeded threshold at x={x_next!r}")

    return outcome(Status.MAX_ITERATIONS)
