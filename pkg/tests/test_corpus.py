import json
import math
import random

import pytest

from rootbench import UnknownFunction
from rootbench.corpus import NonFinite, evaluate_safe, list_functions, lookup

ALL = list_functions()
SIMPLE_ROOT_TOL = 1e-9


def test_table_sizes():
    assert len(list_functions("1")) == 7
    assert len(list_functions("2")) == 7
    assert len(list_functions("aux")) == 1
    assert len(ALL) == 15
    assert sum(len(fn.start_sets) for fn in list_functions("1")) == 15


def test_ids_unique():
    assert len({fn.id for fn in ALL}) == len(ALL)


def test_unknown_function():
    with pytest.raises(UnknownFunction, match="nope"):
        lookup("nope")


def test_bad_table():
    with pytest.raises(ValueError):
        list_functions("3")


@pytest.mark.parametrize("fn", ALL, ids=lambda fn: fn.id)
def test_reference_roots_are_roots(fn):
    for r in fn.roots:
        # The quadruple root at -2 flattens f so much that only its residual,
        # not its abscissa, is small; the stored decimal is exact there anyway.
        tol = 1e-6 if fn.id == "multiple_root" and r == -2.0 else SIMPLE_ROOT_TOL
        assert abs(fn(r)) < tol


@pytest.mark.parametrize("fn", ALL, ids=lambda fn: fn.id)
def test_derivative_matches_central_difference(fn):
    rng = random.Random(f"fd-{fn.id}")
    lo, hi = fn.sample_interval
    for _ in range(100):
        x = rng.uniform(lo, hi)
        h = 1e-6 * max(abs(x), 1.0)
        fd = (fn(x + h) - fn(x - h)) / (2 * h)
        exact = fn.df(x)
        assert math.isclose(fd, exact, rel_tol=1e-5, abs_tol=1e-9), (x, fd, exact)


@pytest.mark.parametrize("fn", ALL, ids=lambda fn: fn.id)
def test_start_sets_map_to_valid_roots(fn):
    for s in fn.start_sets:
        assert 0 <= s.root_index < len(fn.roots)
        assert len(s.starts) == 3
        assert len(set(s.starts)) == 3


def test_two_root_mapping():
    bump = lookup("gauss_bump")
    assert [bump.root_for(s) for s in bump.start_sets] == [1.67963061042845, 0.101025848315685]
    two = lookup("cubic_two_roots")
    assert [two.root_for(s) for s in two.start_sets] == [1.76393202250021, 6.23606797749979]


def test_roots_parsed_verbatim():
    assert lookup("order_cubic").roots == (float("1.839286755214161"),)
    assert lookup("cubic_poly").roots == (1.3652300134141,)


def test_evaluate_safe():
    log = lookup("log")
    assert evaluate_safe(log, -1.0) == NonFinite(-1.0)
    assert not evaluate_safe(log, 0.0)
    assert evaluate_safe(lookup("cube_root"), -8.0) == -2.0
    assert evaluate_safe(lookup("exp_quadratic"), 3.0) == 0.0
    assert isinstance(evaluate_safe(lookup("exp_quadratic"), 1e3), NonFinite)
    assert isinstance(evaluate_safe(log, math.nan), NonFinite)


def test_call_maps_domain_errors_to_nan():
    assert math.isnan(lookup("x_minus_3ln")(-2.0))


def test_cube_root_derivative_at_zero():
    assert lookup("cube_root").df(0.0) == math.inf


def test_json_export_round_trips():
    doc = json.loads(json.dumps([fn.to_json() for fn in ALL]))
    arctan = next(d for d in doc if d["id"] == "arctan")
    assert arctan == {
        "id": "arctan",
        "expression": "arctan(x)",
        "table": "2",
        "roots": [0.0],
        "start_sets": [[3.0, 3.25, 3.5], [-3.0, -3.25, -3.5]],
    }
