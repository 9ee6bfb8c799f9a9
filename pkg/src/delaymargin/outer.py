"""Outer function with prescribed boundary modulus on the imaginary axis.

The outer function of a weight ``phi`` is

    W(s) = exp[ (1/pi) * integral log(phi(w)) (w s + i)/(w + i s) dw / (1 + w^2) ]

for ``Re s > 0``.  With ``w = tan(u)`` the measure ``dw / (1 + w^2)`` becomes
``du`` on ``(-pi/2, pi/2)``, and the integral is evaluated by composite
Gauss-Legendre quadrature on panels graded towards the points where the
integrand is not smooth:

* ``u = 0``: ``log phi`` has a logarithmic singularity (no floor);
* ``arctan(omega_plus)``, ``arctan(omega_minus)`` and floor crossings: kinks;
* ``arctan(Im s)`` when ``s`` is close to the axis: the kernel peaks there.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from ._backend import kernels
from .errors import AccuracyNotReachedError, DomainError, InvalidInputError, NumericError
from .plant import Plant
from .weight import WeightSpec, break_frequencies, floor_crossings, phi_shifted

# grading toward the log singularity stops once panels are this narrow (in u)
_LOG_GRADING_FLOOR = 1e-15
_MAX_PEAK_LEVELS = 60


@dataclass(frozen=True)
class QuadratureConfig:
    panels: int = 64
    nodes_per_panel: int = 16
    kink_refinement: int = 8
    tolerance: float = 1e-8

    def __post_init__(self):
        if int(self.panels) < 4:
            raise InvalidInputError("panels must be >= 4")
        if int(self.nodes_per_panel) < 4:
            raise InvalidInputError("nodes_per_panel must be >= 4")
        if int(self.kink_refinement) < 0:
            raise InvalidInputError("kink_refinement must be >= 0")
        if not self.tolerance > 0:
            raise InvalidInputError("tolerance must be positive")


@lru_cache(maxsize=32)
def _gauss_legendre(n: int):
    return np.polynomial.legendre.leggauss(n)


def _breakpoints(panels: int, specials) -> np.ndarray:
    h = math.pi / panels
    half = 0.5 * math.pi
    pieces = [np.linspace(-half, half, panels + 1)]
    for center, levels in specials:
        off = h * 2.0 ** -np.arange(levels + 1)
        pieces += [center - off, center + off, np.array([center])]
    pts = np.concatenate(pieces)
    pts = pts[(pts > -half) & (pts < half)]
    return np.unique(np.concatenate([[-half], pts, [half]]))


def _nodes(panels: int, order: int, specials):
    b = _breakpoints(panels, specials)
    x, w = _gauss_legendre(order)
    mid = 0.5 * (b[1:] + b[:-1])
    hw = 0.5 * (b[1:] - b[:-1])
    u = (mid[:, None] + hw[:, None] * x[None, :]).ravel()
    wt = (hw[:, None] * w[None, :]).ravel()
    return np.tan(u), wt


def _specials(panels: int, kink_levels: int, kinks, log_singularities) -> list:
    h = math.pi / panels
    depth = int(math.ceil(math.log2(h / _LOG_GRADING_FLOOR)))
    out = [(math.atan(w), depth) for w in log_singularities]
    for w in kinks:
        u = math.atan(w)
        # a kink close to +-pi/2 borders a region where log phi grows like log(tan u)
        gap = 0.5 * math.pi - abs(u)
        levels = max(int(kink_levels), int(math.ceil(math.log2(h / gap))) + 3 if gap < h else 0)
        out.append((u, min(levels, _MAX_PEAK_LEVELS)))
    return out


def _peak_special(s: complex, panels: int):
    """Grading around the kernel peak for points close to the imaginary axis."""
    h = math.pi / panels
    width = s.real / (1.0 + s.imag * s.imag)
    if width >= h:
        return None
    levels = min(int(math.ceil(math.log2(h / width))) + 3, _MAX_PEAK_LEVELS)
    return (math.atan(s.imag), levels)


def _log_integrals(points, modulus, kinks, log_singularities, quad, panels):
    base = _specials(panels, quad.kink_refinement, kinks, log_singularities)
    out = np.empty(len(points), dtype=complex)
    groups = {}
    for k, s in enumerate(points):
        groups.setdefault(_peak_special(s, panels), []).append(k)
    for extra, idx in groups.items():
        specials = base if extra is None else base + [extra]
        om, wt = _nodes(panels, int(quad.nodes_per_panel), specials)
        ph = np.asarray(modulus(om), dtype=float)
        if np.any(~(ph > 0)) or np.any(~np.isfinite(ph)):
            raise NumericError("weight vanishes or is not finite at a quadrature node")
        pts = np.array([points[k] for k in idx])
        logph = np.log(ph)
        out[idx] = kernels.outer_log_sums(om, wt, logph, pts)
        if extra is not None:
            # the kernel has unit mass; removing log phi(Im s) times the
            # numerical mass cancels node rounding across the narrow peak
            ref = np.log(np.asarray(modulus(pts.imag), dtype=float))
            ok = np.isfinite(ref)
            if np.any(ok):
                mass = kernels.outer_log_sums(om, wt, np.ones_like(logph), pts[ok])
                sel = np.asarray(idx)[ok]
                out[sel] += ref[ok] * (1.0 - mass)
    return out


def log_outer_from_modulus(
    points,
    modulus: Callable[[np.ndarray], np.ndarray],
    quad: QuadratureConfig = QuadratureConfig(),
    kinks: Sequence[float] = (),
    log_singularities: Sequence[float] = (),
):
    """``log W(s)`` for the outer function with boundary modulus ``modulus(omega)``.

    ``kinks`` and ``log_singularities`` are frequencies where the modulus is
    not smooth or where ``log modulus`` diverges; panels are graded towards
    them.  The result is self-checked by doubling the panel count.

    Raises
    ------
    DomainError
        If any point has ``Re s <= 0``.
    AccuracyNotReachedError
        If doubling the panel count moves ``log|W|`` by more than ``quad.tolerance``.
    """
    pts = [complex(s) for s in np.atleast_1d(np.asarray(points, dtype=complex))]
    for s in pts:
        if not s.real > 0:
            raise DomainError(f"outer function needs Re(s) > 0, got {s!r}")
    if not pts:
        return np.empty(0, dtype=complex)
    coarse = _log_integrals(pts, modulus, kinks, log_singularities, quad, int(quad.panels))
    fine = _log_integrals(pts, modulus, kinks, log_singularities, quad, 2 * int(quad.panels))
    err = np.abs(coarse.real - fine.real)
    if np.any(err > quad.tolerance):
        k = int(np.argmax(err))
        raise AccuracyNotReachedError(
            f"outer quadrature at s={pts[k]!r} changed log|W| by {err[k]:.3e} "
            f"(> {quad.tolerance:g}) under panel doubling",
            coarse=complex(coarse[k]),
            fine=complex(fine[k]),
        )
    return fine


def log_outer(points, spec: WeightSpec, quad: QuadratureConfig = QuadratureConfig()):
    """``log W(s)`` for the weight described by ``spec``."""
    bf = break_frequencies(spec.shift, spec.tau_bar)
    return log_outer_from_modulus(
        points,
        lambda om: phi_shifted(om, spec),
        quad,
        kinks=(bf.omega_plus, bf.omega_minus, *floor_crossings(spec)),
        log_singularities=(0.0,) if spec.epsilon_floor == 0 else (),
    )


def evaluate_outer(s, spec: WeightSpec, quad: QuadratureConfig = QuadratureConfig()):
    """Value of the outer function at ``s`` (scalar or array) in the open right half plane."""
    vals = np.exp(log_outer(s, spec, quad))
    return complex(vals[0]) if np.ndim(s) == 0 else vals


def interpolation_data(plant: Plant, spec: WeightSpec, quad: QuadratureConfig = QuadratureConfig()):
    """Outer function values at the unstable poles and at the nonminimum-phase zeros."""
    vals = np.exp(log_outer(np.array(plant.nodes, dtype=complex), spec, quad))
    return vals[: plant.n_poles], vals[plant.n_poles:]


def outer_trace(spec: WeightSpec, sigma: float, omegas, quad: QuadratureConfig = QuadratureConfig()):
    """``|W(sigma + i omega)|`` along a line parallel to the imaginary axis."""
    om = np.asarray(omegas, dtype=float)
    return np.abs(np.exp(log_outer(sigma + 1j * om, spec, quad)))
