"""Pure NumPy implementations of the hot kernels.

Used when the compiled extension is unavailable or when the
``DELAYMARGIN_BACKEND=python`` environment variable is set.  Signatures and
semantics match ``_kernels.pyx`` exactly.
"""
import numpy as np

_CHUNK = 1 << 20


def phi_closed(omega, tau_bar, w0, omega_plus, omega_minus):
    omega = np.ascontiguousarray(omega, dtype=float)
    a = 0.5 - w0.real
    b = w0.imag
    out = np.full(omega.shape, 1.0 / a)
    inside = (omega > omega_minus) & (omega < omega_plus)
    x = 0.5 * tau_bar * omega[inside]
    sn = np.sin(x)
    cs = np.cos(x)
    # 1/|g - w0| with g = 1/2 - (i/2) cot(x), multiplied through by |sin x|
    out[inside] = np.abs(sn) / np.hypot(a * sn, 0.5 * cs + b * sn)
    return out


def phi_bruteforce(omega, tau_bar, w0, n):
    omega = np.ascontiguousarray(omega, dtype=float)
    tau = np.linspace(0.0, tau_bar, int(n))
    out = np.empty(omega.shape)
    flat = omega.ravel()
    res = out.ravel()
    step = max(1, _CHUNK // tau.size)
    for i in range(0, flat.size, step):
        x = flat[i:i + step, None] * tau[None, :]
        e = np.exp(-1j * x)
        ratio = np.abs(e - 1.0) / np.abs(1.0 - w0 + w0 * e)
        res[i:i + step] = ratio.max(axis=1)
    return out


def outer_log_sums(nodes, weights, logphi, s):
    nodes = np.asarray(nodes, dtype=float)
    wl = np.asarray(weights, dtype=float) * np.asarray(logphi, dtype=float)
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    out = np.empty(s.shape, dtype=complex)
    for k, sk in enumerate(s):
        kern = (nodes * sk + 1j) / (nodes + 1j * sk)
        out[k] = np.dot(wl, kern) / np.pi
    return out
