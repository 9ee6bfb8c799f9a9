"""Compiled and pure-NumPy kernels must agree."""
import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from delaymargin import _backend, _pykernels

compiled = _backend.compiled_kernels
needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled extension not built")

rng = np.random.default_rng(7)
OMEGA = np.concatenate([[0.0], rng.normal(0, 5, 300), np.logspace(-3, 3, 50)])
SHIFTS = [0j, -10 + 0j, 0.4 + 0j, -1 + 0.5j, 0.3 - 2j]


def test_backend_reports_choice():
    assert _backend.BACKEND in ("compiled", "python")


@needs_compiled
@pytest.mark.parametrize("w0", SHIFTS)
def test_phi_closed_agree(w0):
    tau = 1.3
    a = compiled.phi_closed(OMEGA, tau, w0, 1.1, 1.1 - 2 * np.pi / tau)
    b = _pykernels.phi_closed(OMEGA, tau, w0, 1.1, 1.1 - 2 * np.pi / tau)
    assert np.allclose(a, b, rtol=1e-14, atol=1e-300)


@needs_compiled
@pytest.mark.parametrize("w0", SHIFTS)
def test_phi_bruteforce_agree(w0):
    a = compiled.phi_bruteforce(OMEGA, 2.0, w0, 5000)
    b = _pykernels.phi_bruteforce(OMEGA, 2.0, w0, 5000)
    assert np.allclose(a, b, rtol=1e-12, atol=1e-300)


@needs_compiled
def test_outer_log_sums_agree():
    nodes = np.tan(rng.uniform(-1.5, 1.5, 500))
    weights = rng.uniform(0, 0.01, 500)
    logphi = rng.normal(size=500)
    s = np.array([1.0, 0.2 + 3j, 5 - 1j, 1e-3 + 0.5j])
    a = compiled.outer_log_sums(nodes, weights, logphi, s)
    b = _pykernels.outer_log_sums(nodes, weights, logphi, s)
    assert np.allclose(a, b, rtol=1e-12)


def test_kernels_preserve_shape():
    om = np.linspace(-3, 3, 12).reshape(3, 4)
    for mod in filter(None, (compiled, _pykernels)):
        assert mod.phi_closed(om, 1.0, 0j, np.pi, -np.pi).shape == (3, 4)
        assert mod.phi_bruteforce(om, 1.0, 0j, 10).shape == (3, 4)


def _run_with_backend(backend, code):
    env = {**os.environ, "DELAYMARGIN_BACKEND": backend}
    return subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)


def test_python_fallback_selected_by_env():
    code = ("import delaymargin as d; "
            "r = d.bisect_margin(d.MarginQuery(d.Plant([0.1081], [10.0]), d.Shift(-10))); "
            "print(d.BACKEND, repr(r.tau_lower_bound))")
    py = _run_with_backend("python", code).stdout.split()
    auto = _run_with_backend("auto", code).stdout.split()
    assert py[0] == "python"
    assert float(py[1]) == pytest.approx(float(auto[1]), rel=1e-12)


def test_benchmark_script_runs():
    script = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    proc = subprocess.run([sys.executable, str(script), "--quick", "--repeat", "1"],
                          capture_output=True, text=True)
    if _backend.compiled_kernels is None:
        assert proc.returncode == 1
    else:
        assert proc.returncode == 0, proc.stderr
        assert "phi_bruteforce" in proc.stdout
