import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from delaymargin import (
    AccuracyNotReachedError,
    DomainError,
    QuadratureConfig,
    Shift,
    WeightSpec,
    break_frequencies,
    evaluate_outer,
    interpolation_data,
    phi_shifted,
)
from delaymargin.outer import log_outer_from_modulus, outer_trace

from conftest import conjugate_pair_plant
from oracles import log_outer_real_point


@pytest.mark.parametrize("s", [1.0, 0.01, 7 + 2j, 0.3 - 4j, 1e-3 + 1j])
def test_constant_modulus_gives_constant(s):
    spec = WeightSpec(1.0, Shift(-10), epsilon_floor=0.5)  # plateau 1/10.5 < floor
    w = evaluate_outer(s, spec)
    assert abs(w - 0.5) / 0.5 <= 1e-10


@pytest.mark.parametrize(
    "p, tau, w0",
    [(1.0, 1.0, 0.0), (0.1081, 18.0, -50.0), (3.0, 0.3, 0.4), (0.5, 3.0, -1.0), (2.0, 0.05, -10.0)],
)
def test_matches_independent_poisson_quadrature(p, tau, w0):
    got = evaluate_outer(p, WeightSpec(tau, Shift(w0)))
    ref = math.exp(log_outer_real_point(p, tau, w0))
    assert abs(got - ref) / ref <= 1e-10


@pytest.mark.parametrize("w0", [0, -1, -10, 0.4])
def test_real_point_value_is_real_for_even_weight(w0):
    for p in (0.2, 1.0, 4.0):
        w = evaluate_outer(p, WeightSpec(1.5, Shift(w0)))
        assert abs(w.imag) <= 1e-10 * abs(w)


def test_boundary_modulus_reproduced():
    spec = WeightSpec(1.0, Shift(-1 + 0.5j))
    bf = break_frequencies(spec.shift, spec.tau_bar)
    om = np.array([0.3, 1.1, bf.omega_plus + 0.5, 8.0, -0.4, bf.omega_minus - 1.0])
    mag = outer_trace(spec, 1e-4, om)
    phi = phi_shifted(om, spec)
    assert np.max(np.abs(mag - phi) / phi) <= 0.01


def test_domain_error_off_half_plane():
    spec = WeightSpec(1.0)
    for s in (0.0, -1.0, 2j):
        with pytest.raises(DomainError):
            evaluate_outer(s, spec)


def test_self_check_failure_carries_estimates():
    quad = QuadratureConfig(panels=4, nodes_per_panel=4, kink_refinement=0, tolerance=1e-14)
    with pytest.raises(AccuracyNotReachedError) as info:
        evaluate_outer(1e-3 + 2j, WeightSpec(1.0, Shift(-1 + 0.5j), epsilon_floor=0.01), quad)
    assert info.value.coarse != info.value.fine


@pytest.mark.parametrize("c", [0.1, 3.0, 250.0])
def test_scaling_modulus_scales_outer(c):
    spec = WeightSpec(0.7, Shift(-1))
    bf = break_frequencies(spec.shift, spec.tau_bar)
    kw = dict(kinks=(bf.omega_plus, bf.omega_minus), log_singularities=(0.0,))
    s = np.array([0.4, 2 + 1j, 0.05 - 0.3j])
    base = log_outer_from_modulus(s, lambda om: phi_shifted(om, spec), **kw)
    scaled = log_outer_from_modulus(s, lambda om: c * phi_shifted(om, spec), **kw)
    assert np.allclose(np.exp(scaled), c * np.exp(base), rtol=1e-10, atol=0)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.05, 5), st.floats(0.05, 5), st.floats(1.01, 3), st.floats(-20, 0.45))
def test_modulus_nondecreasing_in_tau_at_real_points(p, tau, factor, w0):
    a = abs(evaluate_outer(p, WeightSpec(tau, Shift(w0))))
    b = abs(evaluate_outer(p, WeightSpec(tau * factor, Shift(w0))))
    assert a <= b * (1 + 1e-10)


def test_zero_free():
    spec = WeightSpec(1e-6)
    assert abs(evaluate_outer(1.0, spec)) > 0


def test_vanishing_delay_drives_values_to_zero():
    mags = [abs(evaluate_outer(1.0, WeightSpec(t))) for t in (1e-1, 1e-2, 1e-3, 1e-4)]
    assert all(b < a for a, b in zip(mags, mags[1:]))
    assert mags[-1] < 1e-3


@pytest.mark.parametrize("w0", [0.0, -1.0, -10.0, 0.3])
def test_conjugate_nodes_give_conjugate_values(w0):
    plant = conjugate_pair_plant(1.3, 1.0, zeros=[0.7 + 0.2j, 0.7 - 0.2j])
    wp, wz = interpolation_data(plant, WeightSpec(0.9, Shift(w0)))
    assert abs(wp[0] - wp[1].conjugate()) <= 1e-9 * abs(wp[0])
    assert abs(wz[0] - wz[1].conjugate()) <= 1e-9 * abs(wz[0])


def test_interpolation_data_shapes(example_plant):
    wp, wz = interpolation_data(example_plant, WeightSpec(2.0))
    assert wp.shape == (1,) and wz.shape == (1,)
    assert np.all(np.abs(wz) > 0)


def test_vector_and_scalar_evaluation_agree():
    spec = WeightSpec(2.0, Shift(-1 + 0.5j))
    pts = np.array([0.5, 1 + 1j, 3 - 2j])
    vec = evaluate_outer(pts, spec)
    assert np.allclose(vec, [evaluate_outer(complex(s), spec) for s in pts], rtol=1e-14)


def test_determinism():
    spec = WeightSpec(2.0, Shift(-1 + 0.5j))
    a = evaluate_outer(0.3 + 0.1j, spec)
    b = evaluate_outer(0.3 + 0.1j, spec)
    assert a == b
