"""Derivative-free three-point secant root finding, with Newton, Secant and
Muller baselines and a benchmark harness over a fixed function corpus."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    CoincidentAbscissae,
    DegenerateDenominator,
    InsufficientResolution,
    InvalidStarts,
    MissingDerivative,
    NoUsableSteps,
    NonFiniteEvaluation,
    RootbenchError,
    UnknownFunction,
    UnknownMethod,
)
from .solver import (  # noqa: E402
    InclinationSlope,
    IterationTrace,
    Method,
    Point,
    SolverConfig,
    SolverOutcome,
    Status,
    muller_step,
    newton_step,
    secant_step,
    seed_third_point,
    solve,
    three_point_step,
)
