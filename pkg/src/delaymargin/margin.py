"""Delay-margin search: bisection over the delay bound and grid search over shifts."""
from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import DomainError, InvalidInputError
from .outer import QuadratureConfig
from .pick import DEFAULT_PD_TOL, FeasibilityCertificate, feasibility_at, zero_delay_certificate
from .plant import Plant
from .weight import Shift

log = logging.getLogger(__name__)

DEFAULT_REL_TOL = 1e-4
MAX_DOUBLINGS = 10


def initial_upper_bound(plant: Plant) -> float:
    """``2 pi / max |p_j|``, the starting upper end of the bisection bracket."""
    return 2.0 * math.pi / max(abs(p) for p in plant.unstable_poles)


def middleton_upper_bound(r: float, theta: float) -> float:
    """Upper bound on the maximum delay margin for unstable poles at ``r e^{+-i theta}``.

    ``(pi sin(theta) + 2 max(cos(theta), theta sin(theta))) / r``.  Tight for a
    single real unstable pole or a single conjugate pair.
    """
    if not r > 0:
        raise DomainError(f"r must be positive, got {r!r}")
    if not 0.0 <= theta <= 0.5 * math.pi:
        raise DomainError(f"theta must lie in [0, pi/2], got {theta!r}")
    st, ct = math.sin(theta), math.cos(theta)
    return (math.pi * st + 2.0 * max(ct, theta * st)) / r


def plant_upper_bound(plant: Plant) -> Optional[float]:
    """Middleton bound when the unstable poles are one real pole or one conjugate pair, else None."""
    poles = plant.unstable_poles
    if len(poles) == 1 and poles[0].imag == 0:
        return middleton_upper_bound(poles[0].real, 0.0)
    if len(poles) == 2 and abs(poles[0] - poles[1].conjugate()) <= 1e-12 * abs(poles[0]):
        p = poles[0]
        return middleton_upper_bound(abs(p), abs(math.atan2(p.imag, p.real)))
    return None


@dataclass(frozen=True)
class MarginQuery:
    """Inputs of one bisection run.

    ``tol`` is the final bracket width in seconds; ``None`` means
    ``DEFAULT_REL_TOL`` times the initial upper bound.
    """

    plant: Plant
    shift: Shift = Shift()
    tol: Optional[float] = None
    tau_upper_init: Optional[float] = None
    quad: QuadratureConfig = QuadratureConfig()
    pd_tolerance: float = DEFAULT_PD_TOL
    epsilon_floor: float = 0.0
    max_doublings: int = MAX_DOUBLINGS

    def __post_init__(self):
        if not isinstance(self.shift, Shift):
            object.__setattr__(self, "shift", Shift(self.shift))
        if self.tol is not None and not self.tol > 0:
            raise InvalidInputError("tol must be positive")
        if self.tau_upper_init is not None and not self.tau_upper_init > 0:
            raise InvalidInputError("tau_upper_init must be positive")


@dataclass(frozen=True)
class MarginResult:
    tau_lower_bound: float
    shift_used: complex
    iterations: int
    final_certificate: FeasibilityCertificate
    bracket: tuple
    initial_bound_binding: bool = True
    diagnostic: Optional[str] = field(default=None, compare=False)

    def to_dict(self) -> dict:
        return {
            "tau_lower_bound": self.tau_lower_bound,
            "shift_used": [self.shift_used.real, self.shift_used.imag],
            "iterations": self.iterations,
            "bracket": list(self.bracket),
            "initial_bound_binding": self.initial_bound_binding,
            "certificate": self.final_certificate.to_dict(),
            "diagnostic": self.diagnostic,
        }


def bisect_margin(query: MarginQuery) -> MarginResult:
    """Largest delay bound certified feasible by bisection on the Pick test."""
    plant, shift = query.plant, query.shift
    tau0 = query.tau_upper_init or initial_upper_bound(plant)
    tol = query.tol if query.tol is not None else DEFAULT_REL_TOL * tau0

    def feasible(tau):
        return feasibility_at(
            tau, plant, shift, query.quad, query.pd_tolerance, query.epsilon_floor
        )

    lo, hi = 0.0, tau0
    lo_cert = None
    binding = True
    diagnostic = None
    hi_cert = feasible(hi)
    while hi_cert.is_feasible:
        binding = False
        lo, lo_cert = hi, hi_cert
        if hi >= tau0 * 2.0 ** query.max_doublings:
            diagnostic = "upper bracket cap reached while still feasible"
            log.warning("%s (tau=%g, w0=%r)", diagnostic, hi, shift.w0)
            return MarginResult(lo, shift.w0, 0, lo_cert, (lo, hi), binding, diagnostic)
        hi *= 2.0
        hi_cert = feasible(hi)
    if not binding:
        diagnostic = f"initial upper bound {tau0:.6g} was feasible; bracket doubled to {hi:.6g}"
        log.info(diagnostic)

    iterations = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        cert = feasible(mid)
        iterations += 1
        if cert.is_feasible:
            lo, lo_cert = mid, cert
        else:
            hi = mid
    if lo == 0.0:
        lo_cert = zero_delay_certificate(plant, shift, query.pd_tolerance, query.epsilon_floor)
        diagnostic = (
            f"infeasible for every tested delay down to {hi:.3g}; "
            "shift too aggressive or numerical failure"
        )
    return MarginResult(lo, shift.w0, iterations, lo_cert, (lo, hi), binding, diagnostic)


def default_shift_grid() -> list:
    """Real shifts -1.5, -1.48, ..., 0.48."""
    return [round(-1.5 + 0.02 * k, 12) for k in range(100)]


def _run_query(query: MarginQuery) -> MarginResult:
    return bisect_margin(query)


def run_queries(queries: Sequence[MarginQuery], jobs: Optional[int] = None) -> list:
    """Evaluate independent queries, optionally in worker processes; order is preserved."""
    jobs = jobs or os.cpu_count() or 1
    if jobs <= 1 or len(queries) <= 1:
        return [bisect_margin(q) for q in queries]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_query, queries, chunksize=max(1, len(queries) // (4 * jobs))))


def select_best(results: Sequence[MarginResult]) -> MarginResult:
    """Largest bound; ties go to the smaller ``|w0|``."""
    if not results:
        raise InvalidInputError("no results to choose from")
    return max(results, key=lambda r: (r.tau_lower_bound, -abs(r.shift_used)))


def grid_search_shift(
    plant: Plant,
    shift_grid: Sequence,
    tol: Optional[float] = None,
    quad: QuadratureConfig = QuadratureConfig(),
    pd_tolerance: float = DEFAULT_PD_TOL,
    jobs: Optional[int] = 1,
):
    """Bisect for every shift in the grid; return ``(best, all_results)``."""
    if len(shift_grid) == 0:
        raise InvalidInputError("shift grid is empty")
    shifts = [s if isinstance(s, Shift) else Shift(s) for s in shift_grid]
    queries = [MarginQuery(plant, s, tol, None, quad, pd_tolerance) for s in shifts]
    results = run_queries(queries, jobs)
    return select_best(results), results
