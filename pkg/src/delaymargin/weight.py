"""Boundary weights bounding the delay perturbation on the imaginary axis.

For a delay bound ``tau_bar`` and a shift ``w0`` (``Re w0 < 1/2``) the weight is

    phi(omega) = sup_{0 <= tau <= tau_bar} |(e^{-i tau omega} - 1) / (1 - w0 + w0 e^{-i tau omega})|

which has a closed form with two break frequencies ``omega_minus < 0 <
omega_plus``.  ``w0 = 0`` recovers ``2|sin(tau_bar omega / 2)|`` with a
plateau at 2.  A brute-force evaluation over a ``tau`` grid is provided as an
independent oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from ._backend import kernels
from .errors import InvalidInputError, ShiftDomainError


@dataclass(frozen=True)
class Shift:
    """Center ``w0`` of the disc constraining the complementary sensitivity."""

    w0: complex = 0j

    def __post_init__(self):
        w0 = complex(self.w0)
        if not (math.isfinite(w0.real) and math.isfinite(w0.imag)):
            raise ShiftDomainError(f"shift w0={w0!r} is not finite")
        if not w0.real < 0.5:
            raise ShiftDomainError(
                f"shift violates Re(w0) < 1/2 constraint (w0={w0!r})"
            )
        object.__setattr__(self, "w0", w0)


@dataclass(frozen=True)
class BreakFrequencies:
    omega_bar: float
    omega_plus: float
    omega_minus: float


@dataclass(frozen=True)
class WeightSpec:
    """Fully parameterized weight: delay bound, shift and optional modifiers.

    ``design_overlay`` must accept and return NumPy arrays; it is combined
    by pointwise maximum before ``epsilon_floor``.
    """

    tau_bar: float
    shift: Shift = Shift()
    epsilon_floor: float = 0.0
    design_overlay: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def __post_init__(self):
        if not isinstance(self.shift, Shift):
            object.__setattr__(self, "shift", Shift(self.shift))
        tau_bar = float(self.tau_bar)
        if not (tau_bar > 0 and math.isfinite(tau_bar)):
            raise InvalidInputError(f"tau_bar must be positive, got {self.tau_bar!r}")
        object.__setattr__(self, "tau_bar", tau_bar)
        eps = float(self.epsilon_floor)
        if not (0.0 <= eps < 1.0):
            raise InvalidInputError(f"epsilon_floor must lie in [0, 1), got {eps!r}")
        object.__setattr__(self, "epsilon_floor", eps)

    @property
    def w0(self) -> complex:
        return self.shift.w0

    @property
    def plateau(self) -> float:
        """Closed-form value outside the break frequencies, ``1/(1/2 - Re w0)``."""
        return 1.0 / (0.5 - self.w0.real)

    def with_tau(self, tau_bar: float) -> "WeightSpec":
        return WeightSpec(tau_bar, self.shift, self.epsilon_floor, self.design_overlay)


def phi_baseline(omega, tau_bar: float):
    """Unshifted weight ``2|sin(tau_bar*omega/2)|``, saturating at 2 past ``|omega*tau_bar| = pi``."""
    if not tau_bar > 0:
        raise InvalidInputError("tau_bar must be positive")
    om = np.asarray(omega, dtype=float)
    out = np.where(
        np.abs(om * tau_bar) <= np.pi,
        2.0 * np.abs(np.sin(0.5 * tau_bar * om)),
        2.0,
    )
    return out if out.ndim else float(out)


def break_frequencies(shift: Shift, tau_bar: float) -> BreakFrequencies:
    """Frequencies where the closed form switches between plateau and cotangent branch.

    ``arccot`` is taken in ``(0, pi)``, so ``omega_bar`` is always positive and
    is ``omega_plus``; ``omega_minus = omega_plus - 2 pi / tau_bar``.
    """
    if not isinstance(shift, Shift):
        shift = Shift(shift)
    if not tau_bar > 0:
        raise InvalidInputError("tau_bar must be positive")
    y = -2.0 * shift.w0.imag
    # arccot(y) in (0, pi); arccot(0) = pi/2
    acot = 0.5 * math.pi - math.atan(y)
    omega_bar = 2.0 / tau_bar * acot
    if omega_bar > 0:
        omega_plus = omega_bar
        omega_minus = omega_plus - 2.0 * math.pi / tau_bar
    else:  # unreachable with the (0, pi) branch; kept for the assignment rule
        omega_minus = omega_bar
        omega_plus = omega_minus + 2.0 * math.pi / tau_bar
    return BreakFrequencies(omega_bar, omega_plus, omega_minus)


def _phi_closed(omega, spec: WeightSpec) -> np.ndarray:
    bf = break_frequencies(spec.shift, spec.tau_bar)
    om = np.asarray(omega, dtype=float)
    return kernels.phi_closed(om, spec.tau_bar, spec.w0, bf.omega_plus, bf.omega_minus)


def phi_shifted(omega, spec: WeightSpec):
    """Closed-form shifted weight with design overlay and epsilon floor applied.

    Returns 0 at ``omega = 0`` (no floor) rather than NaN.
    """
    om = np.asarray(omega, dtype=float)
    out = _phi_closed(om, spec)
    if spec.design_overlay is not None:
        overlay = np.asarray(spec.design_overlay(om), dtype=float)
        if np.any(~np.isfinite(overlay)) or np.any(overlay < 0):
            raise InvalidInputError("design overlay must be finite and nonnegative")
        out = np.maximum(out, overlay)
    if spec.epsilon_floor > 0:
        out = np.maximum(out, spec.epsilon_floor)
    return out if out.ndim else float(out)


def phi_oracle(omega, tau_bar: float, shift: Shift, grid_points: int = 10001):
    """Brute-force weight: maximum of the ratio over ``grid_points`` uniform delays in ``[0, tau_bar]``."""
    if not isinstance(shift, Shift):
        shift = Shift(shift)
    if int(grid_points) < 2:
        raise InvalidInputError("grid_points must be at least 2")
    if not tau_bar > 0:
        raise InvalidInputError("tau_bar must be positive")
    om = np.asarray(omega, dtype=float)
    out = kernels.phi_bruteforce(om, float(tau_bar), shift.w0, int(grid_points))
    return out if np.ndim(out) else float(out)


def floor_crossings(spec: WeightSpec) -> list:
    """Frequencies where the closed-form weight crosses ``epsilon_floor``.

    The closed form is monotone on ``(omega_minus, 0)`` and ``(0, omega_plus)``,
    so each side has at most one crossing.  Used as quadrature breakpoints.
    """
    eps = spec.epsilon_floor
    if eps <= 0 or eps >= spec.plateau:
        return []
    bf = break_frequencies(spec.shift, spec.tau_bar)

    def f(w):
        return float(_phi_closed(np.array([w]), spec)[0]) - eps

    out = []
    for end in (bf.omega_minus, bf.omega_plus):
        lo, hi = 0.0, end
        if f(hi) <= 0:
            continue
        out.append(brentq(f, lo, hi, xtol=1e-15 * abs(end), rtol=4 * np.finfo(float).eps))
    return out
