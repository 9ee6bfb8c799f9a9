# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: closed-form weight, brute-force weight, Poisson sums."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sin, cos, sqrt, fabs, hypot, M_PI

cnp.import_array()


def phi_closed(omega, double tau_bar, double complex w0,
               double omega_plus, double omega_minus):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] om = np.ascontiguousarray(omega, dtype=np.float64).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(om.shape[0])
    cdef double a = 0.5 - w0.real
    cdef double b = w0.imag
    cdef double plateau = 1.0 / a
    cdef double x, sn, cs, w
    cdef Py_ssize_t i, n = om.shape[0]
    for i in range(n):
        w = om[i]
        if w >= omega_plus or w <= omega_minus:
            out[i] = plateau
        else:
            x = 0.5 * tau_bar * w
            sn = sin(x)
            cs = cos(x)
            out[i] = fabs(sn) / hypot(a * sn, 0.5 * cs + b * sn)
    return out.reshape(np.shape(omega))


def phi_bruteforce(omega, double tau_bar, double complex w0, long n):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] om = np.ascontiguousarray(omega, dtype=np.float64).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(om.shape[0])
    cdef double one_re = 1.0 - w0.real
    cdef double one_im = -w0.imag
    cdef double ar = w0.real
    cdef double ai = w0.imag
    cdef double dtau = tau_bar / (n - 1)
    cdef double best, x, c, rc, rs, er = 1.0, ei = 0.0, dr, di, num2, den2, r
    cdef Py_ssize_t i, k, m = om.shape[0]
    for i in range(m):
        best = 0.0
        # e^{-i w tau_k} by rotation, re-seeded exactly every 64 samples
        rc = cos(om[i] * dtau)
        rs = -sin(om[i] * dtau)
        for k in range(n):
            if k == n - 1:
                x = om[i] * tau_bar
                er = cos(x)
                ei = -sin(x)
            elif (k & 63) == 0:
                x = om[i] * (k * dtau)
                er = cos(x)
                ei = -sin(x)
            else:
                c = er * rc - ei * rs
                ei = er * rs + ei * rc
                er = c
            num2 = (er - 1.0) * (er - 1.0) + ei * ei
            dr = one_re + ar * er - ai * ei
            di = one_im + ar * ei + ai * er
            den2 = dr * dr + di * di
            r = num2 / den2
            if r > best:
                best = r
        out[i] = sqrt(best)
    return out.reshape(np.shape(omega))


def outer_log_sums(nodes, weights, logphi, s):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] om = np.ascontiguousarray(nodes, dtype=np.float64).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] wt = np.ascontiguousarray(weights, dtype=np.float64).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] lp = np.ascontiguousarray(logphi, dtype=np.float64).ravel()
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] ss = np.ascontiguousarray(np.atleast_1d(s), dtype=np.complex128).ravel()
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(ss.shape[0], dtype=np.complex128)
    cdef Py_ssize_t j, k, n = om.shape[0]
    cdef double sr, si, w, f, nr, ni, dr, di, den, acc_r, acc_i
    for j in range(ss.shape[0]):
        sr = ss[j].real
        si = ss[j].imag
        acc_r = 0.0
        acc_i = 0.0
        for k in range(n):
            w = om[k]
            f = wt[k] * lp[k]
            # (w s + i) / (w + i s)
            nr = w * sr
            ni = w * si + 1.0
            dr = w - si
            di = sr
            den = dr * dr + di * di
            acc_r += f * (nr * dr + ni * di) / den
            acc_i += f * (ni * dr - nr * di) / den
        out[j] = (acc_r + 1j * acc_i) / M_PI
    return out
