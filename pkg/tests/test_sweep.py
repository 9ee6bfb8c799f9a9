import csv
import io
import json
import math

import pytest

from delaymargin import Experiment, InvalidInputError, Plant, sweep
from delaymargin.sweep import (
    CSV_COLUMNS,
    family_plant,
    parse_complex,
    parse_grid,
    rows_to_csv,
    rows_to_json,
)


def test_parse_complex_forms():
    assert parse_complex("-10") == -10
    assert parse_complex("-1+0.5i") == complex(-1, 0.5)
    assert parse_complex("0.2-3j") == complex(0.2, -3)
    assert parse_complex([1, 2]) == complex(1, 2)
    with pytest.raises(InvalidInputError):
        parse_complex("abc")


def test_parse_grid_includes_stop():
    grid = parse_grid("-1.5:0.02:0.48")
    assert len(grid) == 100 and grid[-1] == 0.48 and grid[0] == -1.5
    assert parse_grid("0:1:3") == [0, 1, 2, 3]
    with pytest.raises(InvalidInputError):
        parse_grid("1:2")
    with pytest.raises(InvalidInputError):
        parse_grid("0:-1:3")


def test_families():
    assert family_plant("one_pole_one_zero", p=0.5, z=2) == Plant([0.5], [2])
    assert family_plant("two_real_poles", p1=0.2, p2=1.0) == Plant([0.2, 1.0])
    pair = family_plant("complex_pair_zero", r=1.0, theta=math.pi / 4, z=0.5)
    assert len(pair.unstable_poles) == 2 and pair.nmp_zeros == (0.5,)
    with pytest.raises(InvalidInputError):
        family_plant("99", p=1)
    with pytest.raises(InvalidInputError):
        family_plant("one_pole_one_zero", p=1)


def _exp(**kw):
    base = {"family": "one_pole_one_zero", "fixed": {"z": 2.0}, "vary": "p", "values": [0.5, 1.0], "shifts": [0, -10]}
    base.update(kw)
    return Experiment.from_dict(base)


def test_experiment_validation():
    with pytest.raises(InvalidInputError):
        _exp(family="nope")
    with pytest.raises(InvalidInputError):
        _exp(mode="worst")
    with pytest.raises(InvalidInputError):
        _exp(bogus=1)
    with pytest.raises(InvalidInputError):
        Experiment.from_dict({"family": "one_pole_one_zero"})
    with pytest.raises(InvalidInputError):
        _exp(shifts=[0.6])


def test_value_range_object():
    exp = _exp(values={"start": 0.3, "stop": 4.0, "num": 38})
    assert len(exp.values) == 38 and exp.values[0] == 0.3 and exp.values[-1] == 4.0


def test_sweep_all_rows():
    rows = sweep(_exp())
    assert [(r.param, r.w0) for r in rows] == [(0.5, 0), (0.5, -10), (1.0, 0), (1.0, -10)]
    assert all(r.upper_bound == pytest.approx(2 / r.param) for r in rows)
    assert rows[1].lower_bound > rows[0].lower_bound


def test_sweep_best_rows():
    rows = sweep(_exp(mode="best"))
    assert [r.w0 for r in rows] == [-10, -10]


def test_sweep_marks_degenerate_points():
    rows = sweep(_exp(values=[2.0]))
    assert all(math.isnan(r.lower_bound) for r in rows)


def test_two_real_poles_has_no_closed_form_upper():
    exp = Experiment.from_dict(
        {"family": "two_real_poles", "fixed": {"p1": 0.2}, "vary": "p2", "values": [1.0], "shifts": [0]}
    )
    (row,) = sweep(exp)
    assert row.upper_bound is None and row.lower_bound > 0


def test_csv_layout_and_precision():
    text = rows_to_csv(sweep(_exp(values=[0.5], shifts=[-10])))
    reader = list(csv.reader(io.StringIO(text)))
    assert tuple(reader[0]) == CSV_COLUMNS
    param, w0r, w0i, lb, ub, it = reader[1]
    assert (param, w0r, w0i, ub) == ("0.5", "-10", "0", "4")
    assert len(lb.replace(".", "").lstrip("0")) <= 12
    assert int(it) > 0


def test_json_rows_parse():
    rows = sweep(_exp(values=[0.5, 2.0], shifts=[0]))
    data = json.loads(rows_to_json(rows))
    assert data[0]["lower_bound"] > 0
    assert data[1]["lower_bound"] is None
    assert set(data[0]) == set(CSV_COLUMNS)


def test_sweep_parallel_is_deterministic():
    exp = _exp(values=[0.5, 1.0, 1.5])
    assert rows_to_csv(sweep(exp, jobs=1)) == rows_to_csv(sweep(exp, jobs=2))
