"""Lower bounds on the maximum delay margin of unstable SISO LTI plants.

The sufficient condition is an analytic interpolation problem weighted by
the outer function of the delay-perturbation bound; feasibility is decided
by a Pick matrix and the largest feasible delay is found by bisection.
"""
from ._backend import BACKEND
from .errors import (
    AccuracyNotReachedError,
    DelayMarginError,
    DomainError,
    ImaginaryAxisSingularityError,
    InvalidInputError,
    MultiplicityUnsupportedError,
    NumericError,
    ShiftDomainError,
    StablePlantSignal,
)
from .margin import (
    MarginQuery,
    MarginResult,
    bisect_margin,
    grid_search_shift,
    initial_upper_bound,
    middleton_upper_bound,
    plant_upper_bound,
)
from .outer import QuadratureConfig, evaluate_outer, interpolation_data
from .pick import (
    FeasibilityCertificate,
    PickProblem,
    build_pick_matrix,
    feasibility_at,
    interpolation_values,
    is_feasible,
)
from .plant import Plant, classify_plant, load_plant, roots_of_polynomial
from .sweep import Experiment, load_experiment, rows_to_csv, rows_to_json, sweep
from .weight import (
    BreakFrequencies,
    Shift,
    WeightSpec,
    break_frequencies,
    phi_baseline,
    phi_oracle,
    phi_shifted,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyNotReachedError",
    "BACKEND",
    "BreakFrequencies",
    "DelayMarginError",
    "DomainError",
    "Experiment",
    "FeasibilityCertificate",
    "ImaginaryAxisSingularityError",
    "InvalidInputError",
    "MarginQuery",
    "MarginResult",
    "MultiplicityUnsupportedError",
    "NumericError",
    "PickProblem",
    "Plant",
    "QuadratureConfig",
    "Shift",
    "ShiftDomainError",
    "StablePlantSignal",
    "WeightSpec",
    "bisect_margin",
    "break_frequencies",
    "build_pick_matrix",
    "classify_plant",
    "evaluate_outer",
    "feasibility_at",
    "grid_search_shift",
    "initial_upper_bound",
    "interpolation_data",
    "interpolation_values",
    "is_feasible",
    "load_experiment",
    "load_plant",
    "middleton_upper_bound",
    "phi_baseline",
    "phi_oracle",
    "phi_shifted",
    "plant_upper_bound",
    "roots_of_polynomial",
    "rows_to_csv",
    "rows_to_json",
    "sweep",
]
