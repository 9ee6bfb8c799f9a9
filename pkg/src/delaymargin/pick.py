"""Nevanlinna-Pick feasibility test for the weighted interpolation problem."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidInputError, NumericError
from .outer import QuadratureConfig, interpolation_data
from .plant import Plant
from .weight import Shift, WeightSpec

DEFAULT_PD_TOL = 1e-10


@dataclass(frozen=True)
class PickProblem:
    nodes: tuple
    values: tuple

    def __post_init__(self):
        nodes = tuple(complex(v) for v in self.nodes)
        values = tuple(complex(v) for v in self.values)
        if len(nodes) != len(values):
            raise InvalidInputError("nodes and values must have equal length")
        if any(not v.real > 0 for v in nodes):
            raise InvalidInputError("interpolation nodes must lie in Re(s) > 0")
        if len(set(nodes)) != len(nodes):
            raise InvalidInputError("interpolation nodes must be distinct")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class FeasibilityCertificate:
    is_feasible: bool
    min_eigenvalue: float
    matrix_dimension: int
    tau: float = float("nan")

    def to_dict(self) -> dict:
        return {
            "tau": self.tau,
            "feasible": self.is_feasible,
            "min_eig": self.min_eigenvalue,
            "dim": self.matrix_dimension,
        }


def interpolation_values(
    plant: Plant, shift: Shift, W_at_poles: Sequence[complex], W_at_zeros: Sequence[complex]
) -> PickProblem:
    """Targets ``(1 - w0) W(p_j)`` at poles and ``-w0 W(z_j)`` at zeros."""
    if len(W_at_poles) != plant.n_poles or len(W_at_zeros) != plant.n_zeros:
        raise InvalidInputError("outer values do not match the plant's node counts")
    w0 = shift.w0
    values = [(1 - w0) * complex(w) for w in W_at_poles] + [
        -w0 * complex(w) for w in W_at_zeros
    ]
    return PickProblem(plant.nodes, values)


def build_pick_matrix(problem: PickProblem) -> np.ndarray:
    """Hermitian matrix ``[(1 - w_j conj(w_k)) / (v_j + conj(v_k))]``."""
    v = np.asarray(problem.nodes, dtype=complex)
    w = np.asarray(problem.values, dtype=complex)
    m = (1.0 - np.outer(w, w.conj())) / (v[:, None] + v.conj()[None, :])
    return 0.5 * (m + m.conj().T)


def is_feasible(matrix, pd_tolerance: float = DEFAULT_PD_TOL) -> FeasibilityCertificate:
    """Positive definiteness relative to the largest diagonal entry."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidInputError("Pick matrix must be square")
    if not np.all(np.isfinite(m)):
        raise NumericError("Pick matrix has non-finite entries")
    eig = np.linalg.eigvalsh(m)
    lam = float(eig[0])
    scale = float(np.max(m.diagonal().real))
    return FeasibilityCertificate(lam > pd_tolerance * scale, lam, m.shape[0])


def feasibility_at(
    tau_bar: float,
    plant: Plant,
    shift: Shift = Shift(),
    quad: QuadratureConfig = QuadratureConfig(),
    pd_tolerance: float = DEFAULT_PD_TOL,
    epsilon_floor: float = 0.0,
    design_overlay=None,
) -> FeasibilityCertificate:
    """Is the weighted interpolation problem solvable for delays up to ``tau_bar``?"""
    spec = WeightSpec(tau_bar, shift, epsilon_floor, design_overlay)
    wp, wz = interpolation_data(plant, spec, quad)
    cert = is_feasible(build_pick_matrix(interpolation_values(plant, shift, wp, wz)), pd_tolerance)
    return FeasibilityCertificate(cert.is_feasible, cert.min_eigenvalue, cert.matrix_dimension, float(tau_bar))


def zero_delay_certificate(
    plant: Plant,
    shift: Shift = Shift(),
    pd_tolerance: float = DEFAULT_PD_TOL,
    epsilon_floor: float = 0.0,
) -> FeasibilityCertificate:
    """Certificate for the limit ``tau_bar -> 0``.

    The weight tends to ``epsilon_floor`` everywhere, so the outer function is that constant.
    """
    eps = float(epsilon_floor)
    problem = interpolation_values(plant, shift, [eps] * plant.n_poles, [eps] * plant.n_zeros)
    cert = is_feasible(build_pick_matrix(problem), pd_tolerance)
    return FeasibilityCertificate(cert.is_feasible, cert.min_eigenvalue, cert.matrix_dimension, 0.0)
