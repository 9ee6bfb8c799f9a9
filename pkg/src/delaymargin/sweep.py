"""Parameter sweeps over the standard example plant families.

Experiment files are JSON objects::

    {
      "family": "one_pole_one_zero",        # or "two_real_poles", "complex_pair_zero"
      "fixed": {"z": 2.0},                  # family parameters held constant
      "vary": "p",                          # parameter swept
      "values": {"start": 0.3, "stop": 4.0, "num": 38},   # or an explicit list
      "shifts": [0, -10, 0.35],             # list, [[re, im], ...] or "start:step:stop"
      "mode": "all",                        # "all": row per (param, w0); "best": row per param
      "tol": null,                          # absolute bisection width; null -> relative
      "pd_tol": 1e-10,
      "quad": {"panels": 64, "nodes_per_panel": 16}
    }
"""
from __future__ import annotations

import csv
import io
import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import DelayMarginError, InvalidInputError
from .margin import MarginQuery, plant_upper_bound, run_queries, select_best
from .outer import QuadratureConfig
from .pick import DEFAULT_PD_TOL
from .plant import Plant
from .weight import Shift

log = logging.getLogger(__name__)

CSV_COLUMNS = ("param", "w0_re", "w0_im", "lower_bound", "upper_bound", "iterations")


def _one_pole_one_zero(p, z):
    return Plant([p], [z])


def _two_real_poles(p1, p2):
    return Plant([p1, p2], [])


def _complex_pair_zero(r, theta, z):
    pole = r * complex(math.cos(theta), math.sin(theta))
    return Plant([pole, pole.conjugate()], [z])


FAMILIES = {
    "one_pole_one_zero": (_one_pole_one_zero, ("p", "z")),
    "two_real_poles": (_two_real_poles, ("p1", "p2")),
    "complex_pair_zero": (_complex_pair_zero, ("r", "theta", "z")),
}


def family_plant(family: str, **params) -> Plant:
    name = str(family)
    if name not in FAMILIES:
        raise InvalidInputError(f"unknown plant family {family!r}")
    build, names = FAMILIES[name]
    missing = set(names) - set(params)
    extra = set(params) - set(names)
    if missing or extra:
        raise InvalidInputError(
            f"family {name} takes parameters {names}; missing {sorted(missing)}, unexpected {sorted(extra)}"
        )
    return build(**{k: float(params[k]) for k in names})


def parse_complex(text) -> complex:
    """``"re"``, ``"re+imi"`` / ``"re-imj"`` or a number."""
    if isinstance(text, (int, float, complex)):
        return complex(text)
    if isinstance(text, (list, tuple)) and len(text) == 2:
        return complex(float(text[0]), float(text[1]))
    s = str(text).strip().replace("i", "j").replace(" ", "")
    try:
        return complex(s)
    except ValueError:
        raise InvalidInputError(f"cannot parse complex number {text!r}") from None


def parse_grid(text: str) -> list:
    """``"start:step:stop"`` with ``stop`` included when it falls on the grid."""
    try:
        start, step, stop = (float(x) for x in str(text).split(":"))
    except ValueError:
        raise InvalidInputError(f"grid must be 'start:step:stop', got {text!r}") from None
    if step == 0 or (stop - start) / step < 0:
        raise InvalidInputError(f"grid {text!r} is empty")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + k * step, 12) for k in range(n)]


def _values(spec) -> list:
    if isinstance(spec, dict):
        try:
            return [float(v) for v in np.linspace(spec["start"], spec["stop"], int(spec["num"]))]
        except KeyError as exc:
            raise InvalidInputError(f"value range needs start/stop/num, missing {exc}") from None
    if isinstance(spec, str):
        return parse_grid(spec)
    if isinstance(spec, (list, tuple)):
        return [float(v) for v in spec]
    raise InvalidInputError("values must be a list, a range object or 'start:step:stop'")


def _shifts(spec) -> list:
    if isinstance(spec, str):
        return [Shift(w) for w in parse_grid(spec)]
    if isinstance(spec, (list, tuple)):
        return [Shift(parse_complex(w)) for w in spec]
    raise InvalidInputError("shifts must be a list or 'start:step:stop'")


@dataclass(frozen=True)
class Experiment:
    family: str
    fixed: dict
    vary: str
    values: tuple
    shifts: tuple
    mode: str = "all"
    tol: Optional[float] = None
    pd_tol: float = DEFAULT_PD_TOL
    quad: QuadratureConfig = QuadratureConfig()

    @classmethod
    def from_dict(cls, data: dict) -> "Experiment":
        if not isinstance(data, dict):
            raise InvalidInputError("experiment must be a JSON object")
        known = {"family", "fixed", "vary", "values", "shifts", "mode", "tol", "pd_tol", "quad"}
        unknown = set(data) - known
        if unknown:
            raise InvalidInputError(f"unknown experiment keys: {sorted(unknown)}")
        for key in ("family", "vary", "values"):
            if key not in data:
                raise InvalidInputError(f"experiment is missing {key!r}")
        family = str(data["family"])
        if family not in FAMILIES:
            raise InvalidInputError(f"unknown plant family {data['family']!r}")
        mode = data.get("mode", "all")
        if mode not in ("all", "best"):
            raise InvalidInputError("mode must be 'all' or 'best'")
        try:
            quad = QuadratureConfig(**data.get("quad", {}))
        except TypeError as exc:
            raise InvalidInputError(f"bad quadrature overrides: {exc}") from None
        return cls(
            family=family,
            fixed=dict(data.get("fixed", {})),
            vary=str(data["vary"]),
            values=tuple(_values(data["values"])),
            shifts=tuple(_shifts(data.get("shifts", [0]))),
            mode=mode,
            tol=data.get("tol"),
            pd_tol=float(data.get("pd_tol", DEFAULT_PD_TOL)),
            quad=quad,
        )

    def plant_at(self, value: float) -> Plant:
        return family_plant(self.family, **{**self.fixed, self.vary: value})


def load_experiment(path) -> Experiment:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InvalidInputError(f"cannot read experiment file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"experiment file is not valid JSON: {exc}") from None
    return Experiment.from_dict(data)


@dataclass(frozen=True)
class SweepRow:
    param: float
    w0: complex
    lower_bound: float
    upper_bound: Optional[float]
    iterations: int

    def to_dict(self) -> dict:
        return {
            "param": self.param,
            "w0_re": self.w0.real,
            "w0_im": self.w0.imag,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "iterations": self.iterations,
        }


def sweep(experiment: Experiment, jobs: Optional[int] = 1) -> list:
    """Run every (parameter, shift) query and tabulate the results."""
    plants = []
    for v in experiment.values:
        try:
            plants.append(experiment.plant_at(v))
        except DelayMarginError as exc:
            # e.g. pole landing on the zero; keep the row, mark it failed
            log.warning("skipping %s=%g: %s", experiment.vary, v, exc)
            plants.append(None)
    queries, index = [], []
    for i, plant in enumerate(plants):
        if plant is None:
            continue
        for j, shift in enumerate(experiment.shifts):
            queries.append(
                MarginQuery(plant, shift, experiment.tol, None, experiment.quad, experiment.pd_tol)
            )
            index.append((i, j))
    results = run_queries(queries, jobs)
    by_param = {}
    for (i, j), res in zip(index, results):
        by_param.setdefault(i, []).append(res)

    rows = []
    for i, v in enumerate(experiment.values):
        plant = plants[i]
        if plant is None:
            cands = [(s.w0, math.nan, 0) for s in experiment.shifts]
            if experiment.mode == "best":
                cands = cands[:1]
            rows += [SweepRow(v, w, lb, None, it) for w, lb, it in cands]
            continue
        upper = plant_upper_bound(plant)
        res = by_param[i] if experiment.mode == "all" else [select_best(by_param[i])]
        rows += [SweepRow(v, r.shift_used, r.tau_lower_bound, upper, r.iterations) for r in res]
    return rows


def _fmt(x) -> str:
    if x is None:
        return "nan"
    if isinstance(x, int):
        return str(x)
    return f"{x:.12g}"


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow(
            [_fmt(r.param), _fmt(r.w0.real), _fmt(r.w0.imag), _fmt(r.lower_bound),
             _fmt(r.upper_bound), _fmt(r.iterations)]
        )
    return buf.getvalue()


def rows_to_json(rows) -> str:
    def clean(d):
        return {k: (None if isinstance(v, float) and math.isnan(v) else v) for k, v in d.items()}

    return json.dumps([clean(r.to_dict()) for r in rows], indent=2)
