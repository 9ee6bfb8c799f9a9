"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5] [--quick]

Prints the best-of-``repeat`` wall time per kernel and backend, the speedup,
and the largest disagreement between the two backends.  The end-to-end row
runs a full bisection in a subprocess with ``DELAYMARGIN_BACKEND`` set.
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from delaymargin._backend import compiled_kernels, python_kernels
from delaymargin.weight import Shift, WeightSpec, break_frequencies

END_TO_END = (
    "import time; from delaymargin import *; t = time.perf_counter(); "
    "[bisect_margin(MarginQuery(Plant([0.1081], [10.0]), Shift(w))) for w in (0, -1, -10, -50)]; "
    "print(time.perf_counter() - t)"
)


def cases(quick):
    n_om, n_tau = (20, 10_000) if quick else (200, 100_000)
    spec = WeightSpec(1.0, Shift(-1 + 0.5j))
    bf = break_frequencies(spec.shift, spec.tau_bar)
    om_dense = np.linspace(-50, 50, 10_000 if quick else 1_000_000)
    om = np.logspace(-3, 3, n_om)
    nodes = np.tan(np.linspace(-1.5, 1.5, 4096 if not quick else 512))
    weights = np.full(nodes.size, 3.0 / nodes.size)
    logphi = np.log1p(nodes * nodes) * 0.1
    pts = np.array([0.1081, 10.0, 1 + 1j, 1 - 1j])
    return {
        "phi_closed": lambda k: k.phi_closed(om_dense, 1.0, spec.w0, bf.omega_plus, bf.omega_minus),
        f"phi_bruteforce ({n_om} x {n_tau})": lambda k: k.phi_bruteforce(om, 1.0, spec.w0, n_tau),
        "outer_log_sums": lambda k: k.outer_log_sums(nodes, weights, logphi, pts),
    }


def best_time(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def end_to_end(backend):
    env = {**os.environ, "DELAYMARGIN_BACKEND": backend}
    out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, check=True,
                         capture_output=True, text=True)
    return float(out.stdout)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--quick", action="store_true", help="small problem sizes")
    args = parser.parse_args(argv)

    if compiled_kernels is None:
        print("compiled extension not built; only the Python backend is available")
        return 1
    print(f"{'kernel':34s} {'compiled':>10s} {'python':>10s} {'speedup':>8s} {'max diff':>10s}")
    for name, fn in cases(args.quick).items():
        tc = best_time(lambda: fn(compiled_kernels), args.repeat)
        tp = best_time(lambda: fn(python_kernels), args.repeat)
        diff = np.max(np.abs(fn(compiled_kernels) - fn(python_kernels)))
        print(f"{name:34s} {tc:10.4f} {tp:10.4f} {tp / tc:8.1f} {diff:10.2e}")
    tc, tp = end_to_end("compiled"), end_to_end("python")
    print(f"{'bisection, 4 shifts (end to end)':34s} {tc:10.4f} {tp:10.4f} {tp / tc:8.1f} {'':>10s}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
