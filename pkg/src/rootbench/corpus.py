"""Benchmark functions with analytic derivatives, reference roots and start sets.

Roots and start values are written as decimal strings and parsed once at
import, so each stored double is the nearest double to its decimal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import UnknownFunction


@dataclass(frozen=True)
class NonFinite:
    """Marker for an evaluation outside the domain or overflowing."""

    x: float

    def __bool__(self):
        return False


@dataclass(frozen=True)
class StartSet:
    starts: tuple[float, ...]
    root_index: int


@dataclass(frozen=True)
class TestFunction:
    id: str
    expression: str
    f: Callable[[float], float]
    df: Callable[[float], float]
    domain: Callable[[float], bool]
    roots: tuple[float, ...]
    start_sets: tuple[StartSet, ...]
    table: str
    # Interval used by randomized checks (derivative vs finite differences).
    sample_interval: tuple[float, float]

    __test__ = False  # not a pytest class

    def __call__(self, x: float) -> float:
        value = evaluate_safe(self, x)
        return math.nan if isinstance(value, NonFinite) else value

    def root_for(self, start_set: StartSet) -> float:
        return self.roots[start_set.root_index]

    def nearest_root(self, x: float) -> float:
        return min(self.roots, key=lambda r: abs(r - x))

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "expression": self.expression,
            "table": self.table,
            "roots": list(self.roots),
            "start_sets": [list(s.starts) for s in self.start_sets],
        }


def _everywhere(x: float) -> bool:
    return True


def _positive(x: float) -> bool:
    return x > 0


def _cbrt(x: float) -> float:
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def _dcbrt(x: float) -> float:
    if x == 0:
        return math.inf
    return 1.0 / (3.0 * abs(x) ** (2.0 / 3.0))


def _entry(
    id: str,
    expression: str,
    table: str,
    f: Callable[[float], float],
    df: Callable[[float], float],
    roots: list[str],
    start_sets: list[tuple[str, int]],
    sample_interval: tuple[float, float],
    domain: Callable[[float], bool] = _everywhere,
) -> TestFunction:
    return TestFunction(
        id=id,
        expression=expression,
        f=f,
        df=df,
        domain=domain,
        roots=tuple(float(r) for r in roots),
        start_sets=tuple(
            StartSet(tuple(float(v) for v in text.split(",")), index)
            for text, index in start_sets
        ),
        table=table,
        sample_interval=sample_interval,
    )


_CORPUS: tuple[TestFunction, ...] = (
    # Table 1: regular and multiple-root cases.
    _entry(
        "cubic_poly", "x^3 + 4x^2 - 10", "1",
        lambda x: x**3 + 4 * x**2 - 10,
        lambda x: 3 * x**2 + 8 * x,
        ["1.365230013414100"],
        [("0.5, 0.55, 0.6", 0), ("0.9, 0.95, 1.0", 0)],
        (0.1, 4.0),
    ),
    _entry(
        "sine_square", "sin(x)^2 - x^2 + 1", "1",
        lambda x: math.sin(x) ** 2 - x**2 + 1,
        lambda x: 2 * math.sin(x) * math.cos(x) - 2 * x,
        ["-1.404491648215340"],
        [("-1.0, -0.975, -0.95", 0), ("-3.5, -3.25, -3.0", 0)],
        (-4.0, -0.5),
    ),
    _entry(
        "multiple_root", "(x - 2)(x + 2)^4", "1",
        lambda x: (x - 2) * (x + 2) ** 4,
        lambda x: (x + 2) ** 4 + 4 * (x - 2) * (x + 2) ** 3,
        ["-2.000000000000000", "2.000000000000000"],
        [("-3.1, -3.05, -3.0", 0), ("1.4, 1.45, 1.5", 1)],
        (1.4, 4.0),
    ),
    _entry(
        "sixth_power", "(x - 1)^6 - 1", "1",
        lambda x: (x - 1) ** 6 - 1,
        lambda x: 6 * (x - 1) ** 5,
        ["2.000000000000000"],
        [("1.5, 1.55, 1.6", 0), ("2.5, 2.55, 2.6", 0), ("3.5, 3.55, 3.6", 0)],
        (1.5, 4.0),
    ),
    _entry(
        "sin_exp_log", "sin(x) e^x + ln(x^2 + 1)", "1",
        lambda x: math.sin(x) * math.exp(x) + math.log(x**2 + 1),
        lambda x: math.exp(x) * (math.sin(x) + math.cos(x)) + 2 * x / (x**2 + 1),
        ["-0.603231971557215"],
        [("-0.9, -0.85, -0.8", 0), ("-0.7, -0.65, -0.6", 0)],
        (-1.0, -0.3),
    ),
    _entry(
        "exp_quadratic", "e^(x^2 + 7x - 30) - 1", "1",
        lambda x: math.exp(x**2 + 7 * x - 30) - 1,
        lambda x: (2 * x + 7) * math.exp(x**2 + 7 * x - 30),
        ["3.000000000000000"],
        [("4.0, 4.05, 4.1", 0), ("4.4, 4.45, 4.5", 0)],
        (2.0, 5.0),
    ),
    _entry(
        "x_minus_3ln", "x - 3 ln(x)", "1",
        lambda x: x - 3 * math.log(x),
        lambda x: 1 - 3 / x,
        ["1.857183860207840"],
        [("2.0, 2.05, 2.1", 0), ("0.4, 0.45, 0.5", 0)],
        (0.2, 2.5),
        domain=_positive,
    ),
    # Table 2: cases where Newton or Secant misbehave.
    _entry(
        "quartic", "-x^4 + 3x^2 + 2", "2",
        lambda x: -(x**4) + 3 * x**2 + 2,
        lambda x: -4 * x**3 + 6 * x,
        ["1.887207676120680"],
        [("1.0, 1.5, 2.0", 0), ("0.5, 0.55, 0.6", 0)],
        (1.3, 3.0),
    ),
    _entry(
        "log", "ln(x)", "2",
        math.log,
        lambda x: 1 / x,
        ["1.0000000000000000"],
        [("3.0, 3.25, 3.5", 0)],
        (0.1, 5.0),
        domain=_positive,
    ),
    _entry(
        "arctan", "arctan(x)", "2",
        math.atan,
        lambda x: 1 / (1 + x**2),
        ["0.0000000000000000"],
        [("3.0, 3.25, 3.5", 0), ("-3.0, -3.25, -3.5", 0)],
        (-4.0, 4.0),
    ),
    _entry(
        "x5_poly", "x^5 - x + 1", "2",
        lambda x: x**5 - x + 1,
        lambda x: 5 * x**4 - 1,
        ["-1.167303978261420"],
        [("2.0, 2.5, 3.0", 0), ("7.0, 7.5, 8.0", 0)],
        (-2.0, -0.8),
    ),
    _entry(
        "cubic_two_roots", "0.5x^3 - 6x^2 + 21.5x - 22", "2",
        lambda x: 0.5 * x**3 - 6 * x**2 + 21.5 * x - 22,
        lambda x: 1.5 * x**2 - 12 * x + 21.5,
        ["1.7639320225002100", "6.236067977499790"],
        [("2.0, 2.5, 3.0", 0), ("5.0, 5.5, 6.0", 1)],
        (0.0, 2.5),
    ),
    _entry(
        "cube_root", "x^(1/3)", "2",
        _cbrt,
        _dcbrt,
        ["0.0000000000000000"],
        [("1.0, 1.25, 1.5", 0), ("-1.0, -1.25, -1.5", 0)],
        (0.01, 3.0),
    ),
    _entry(
        "gauss_bump", "10x e^(-x^2) - 1", "2",
        lambda x: 10 * x * math.exp(-(x**2)) - 1,
        lambda x: 10 * math.exp(-(x**2)) * (1 - 2 * x**2),
        ["1.679630610428450", "0.101025848315685"],
        [("3.0, 3.25, 3.5", 0), ("-1.0, -1.5, -2.0", 1)],
        (-0.5, 0.5),
    ),
    # Characteristic polynomial of the three-point method's order.
    _entry(
        "order_cubic", "a^3 - a^2 - a - 1", "aux",
        lambda a: a**3 - a**2 - a - 1,
        lambda a: 3 * a**2 - 2 * a - 1,
        ["1.839286755214161"],
        [("1.5, 1.7, 1.9", 0)],
        (1.0, 3.0),
    ),
)

_BY_ID = {entry.id: entry for entry in _CORPUS}

TABLES = ("1", "2", "aux")
CORPUS_VERSION = "tables-1-2+order-cubic/1"


def lookup(id: str) -> TestFunction:
    try:
        return _BY_ID[id]
    except KeyError:
        raise UnknownFunction(id) from None


def list_functions(table: Optional[str | int] = None) -> list[TestFunction]:
    if table is None:
        return list(_CORPUS)
    table = str(table)
    if table not in TABLES:
        raise ValueError(f"table must be one of {TABLES}, got {table!r}")
    return [entry for entry in _CORPUS if entry.table == table]


def evaluate_safe(fn: TestFunction, x: float) -> float | NonFinite:
    if not math.isfinite(x) or not fn.domain(x):
        return NonFinite(x)
    try:
        y = fn.f(x)
    except (ArithmeticError, ValueError):
        return NonFinite(x)
    if isinstance(y, complex) or not math.isfinite(y):
        return NonFinite(x)
    return float(y)
