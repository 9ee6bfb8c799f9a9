"""SISO plants described by their unstable poles and nonminimum-phase zeros.

Only right-half-plane nodes matter for the delay margin computation, so a
:class:`Plant` stores exactly those.  Plants can be built directly from node
lists or extracted from a rational transfer function ``num(s)/den(s)`` given
by real coefficients in descending powers of ``s``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    ImaginaryAxisSingularityError,
    InvalidInputError,
    MultiplicityUnsupportedError,
    StablePlantSignal,
)

DEFAULT_AXIS_TOL = 1e-9


def _as_complex_tuple(values: Iterable) -> tuple:
    return tuple(complex(v) for v in values)


def _canonical_order(nodes: Sequence[complex]) -> tuple:
    return tuple(sorted(nodes, key=lambda z: (z.real, z.imag)))


@dataclass(frozen=True)
class Plant:
    """Right-half-plane poles and zeros of a SISO LTI plant.

    Parameters
    ----------
    unstable_poles : sequence of complex
        Poles with strictly positive real part.  At least one is required.
    nmp_zeros : sequence of complex
        Nonminimum-phase zeros, also strictly in the right half plane.
    source : (num, den), optional
        Real coefficient lists the nodes were extracted from.
    """

    unstable_poles: tuple
    nmp_zeros: tuple = ()
    source: Optional[tuple] = field(default=None, compare=False)
    node_tol: float = field(default=DEFAULT_AXIS_TOL, compare=False, repr=False)

    def __post_init__(self):
        poles = _as_complex_tuple(self.unstable_poles)
        zeros = _as_complex_tuple(self.nmp_zeros)
        object.__setattr__(self, "unstable_poles", poles)
        object.__setattr__(self, "nmp_zeros", zeros)
        if len(poles) == 0:
            raise StablePlantSignal("plant has no unstable pole; tau_max is infinite")
        for v in poles + zeros:
            if not (np.isfinite(v.real) and np.isfinite(v.imag)):
                raise InvalidInputError(f"non-finite node {v!r}")
            if v.real <= 0:
                raise InvalidInputError(
                    f"node {v!r} is not in the open right half plane"
                )
        _check_distinct(poles + zeros, self.node_tol)
        if self.source is not None:
            num, den = self.source
            object.__setattr__(
                self, "source", (tuple(float(c) for c in num), tuple(float(c) for c in den))
            )
            for group in (poles, zeros):
                if not _conjugate_closed(group, self.node_tol):
                    raise InvalidInputError(
                        "nodes from real coefficients must be closed under conjugation"
                    )

    @property
    def nodes(self) -> tuple:
        """Interpolation nodes in Pick order: poles first, then zeros."""
        return self.unstable_poles + self.nmp_zeros

    @property
    def n_poles(self) -> int:
        return len(self.unstable_poles)

    @property
    def n_zeros(self) -> int:
        return len(self.nmp_zeros)

    def to_dict(self) -> dict:
        return {
            "poles": [[v.real, v.imag] for v in self.unstable_poles],
            "zeros": [[v.real, v.imag] for v in self.nmp_zeros],
        }


def _check_distinct(nodes: Sequence[complex], tol: float) -> None:
    scale = max([1.0] + [abs(v) for v in nodes])
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            if abs(nodes[i] - nodes[j]) <= tol * scale:
                raise MultiplicityUnsupportedError(
                    f"coincident nodes {nodes[i]!r} and {nodes[j]!r}; "
                    "repeated poles/zeros are not supported"
                )


def _conjugate_closed(nodes: Sequence[complex], tol: float) -> bool:
    scale = max([1.0] + [abs(v) for v in nodes])
    remaining = list(nodes)
    while remaining:
        v = remaining.pop()
        if abs(v.imag) <= tol * scale:
            continue
        dists = [abs(u - v.conjugate()) for u in remaining]
        if not dists or min(dists) > tol * scale:
            return False
        remaining.pop(int(np.argmin(dists)))
    return True


def _strip_leading_zeros(coeffs) -> np.ndarray:
    c = np.atleast_1d(np.asarray(coeffs, dtype=float))
    if c.ndim != 1 or c.size == 0:
        raise InvalidInputError("coefficient list must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(c)):
        raise InvalidInputError("coefficients must be finite")
    nz = np.flatnonzero(c)
    if nz.size == 0:
        raise InvalidInputError("all-zero coefficient list")
    return c[nz[0]:]


def roots_of_polynomial(coeffs, tol: float = 1e-8) -> list:
    """All roots of a real polynomial given in descending powers.

    Companion-matrix eigenvalues (via :func:`numpy.roots`).  Conditioning
    degrades quickly beyond degree ~20 and for clustered roots; ``tol`` is
    the admissible residual ``|poly(root)|`` relative to the coefficient
    scale and is checked for every root.
    """
    c = _strip_leading_zeros(coeffs)
    if c.size == 1:
        return []
    c = c / c[0]
    roots = np.roots(c)
    scale = np.sum(np.abs(c))
    for r in roots:
        # scale the residual by the polynomial's magnitude envelope at |r|
        env = np.polyval(np.abs(c), abs(r))
        if abs(np.polyval(c, r)) > tol * max(scale, env):
            raise InvalidInputError(
                f"root {r!r} failed the residual check; polynomial is ill-conditioned"
            )
    return [complex(r) for r in roots]


def _clean_conjugates(roots: Sequence[complex], tol: float) -> list:
    """Snap near-real roots to the axis and make conjugate pairs exact."""
    out = []
    upper = []
    for r in roots:
        if abs(r.imag) <= tol:
            out.append(complex(r.real, 0.0))
        elif r.imag > 0:
            upper.append(r)
    for r in upper:
        out.append(r)
        out.append(r.conjugate())
    return out


def classify_plant(num, den, axis_tol: float = DEFAULT_AXIS_TOL) -> Plant:
    """Extract the right-half-plane poles and zeros of ``num/den``.

    ``axis_tol`` is relative to the largest root magnitude.  Roots with
    ``|Re| <= axis_tol`` are rejected, left-half-plane roots are dropped.

    Raises
    ------
    StablePlantSignal
        If ``den`` has no root in the open right half plane.
    ImaginaryAxisSingularityError
        If any root lies on the imaginary axis.
    MultiplicityUnsupportedError
        If two right-half-plane nodes coincide.
    """
    n = _strip_leading_zeros(num)
    d = _strip_leading_zeros(den)
    if n.size > d.size:
        raise InvalidInputError("improper transfer function: deg(num) > deg(den)")
    rn = roots_of_polynomial(n)
    rd = roots_of_polynomial(d)
    scale = max([1.0] + [abs(r) for r in rn + rd])
    tol = axis_tol * scale
    rn = _clean_conjugates(rn, tol)
    rd = _clean_conjugates(rd, tol)
    for r in rn + rd:
        if abs(r.real) <= tol:
            raise ImaginaryAxisSingularityError(
                f"root {r!r} lies on the imaginary axis"
            )
    poles = _canonical_order([r for r in rd if r.real > tol])
    zeros = _canonical_order([r for r in rn if r.real > tol])
    if not poles:
        raise StablePlantSignal("plant is stable; tau_max is infinite")
    return Plant(poles, zeros, source=(tuple(n), tuple(d)), node_tol=axis_tol)


def plant_from_dict(data: dict, axis_tol: float = DEFAULT_AXIS_TOL) -> Plant:
    """Build a plant from the JSON description (node form or coefficient form)."""
    if not isinstance(data, dict):
        raise InvalidInputError("plant description must be a JSON object")
    has_nodes = "poles" in data or "zeros" in data
    has_coeffs = "num" in data or "den" in data
    if has_nodes and has_coeffs:
        raise InvalidInputError("plant file mixes pole/zero and num/den forms")
    if has_coeffs:
        if "num" not in data or "den" not in data:
            raise InvalidInputError("coefficient form needs both 'num' and 'den'")
        return classify_plant(data["num"], data["den"], axis_tol)
    if has_nodes:
        try:
            poles = [complex(re, im) for re, im in data.get("poles", [])]
            zeros = [complex(re, im) for re, im in data.get("zeros", [])]
        except (TypeError, ValueError) as exc:
            raise InvalidInputError(f"nodes must be [re, im] pairs: {exc}") from None
        return Plant(poles, zeros, node_tol=axis_tol)
    raise InvalidInputError("plant file needs either poles/zeros or num/den")


def load_plant(path, axis_tol: float = DEFAULT_AXIS_TOL) -> Plant:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidInputError(f"cannot read plant file: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"plant file is not valid JSON: {exc}") from None
    return plant_from_dict(data, axis_tol)
