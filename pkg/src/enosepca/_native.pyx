# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend.

Keep this file in lockstep with enosepca/_kernels/pure.py: the two
backends must perform the same floating-point operations in the same
order. Compiled with -O2 and without -ffast-math on purpose.
"""

from libc.math cimport cos, fabs, sin, sqrt

import numpy as np

cdef double PI = 3.141592653589793


def dft_magnitude(double[::1] x):
    """Magnitude spectrum by direct O(L^2) summation (oracle transform)."""
    cdef Py_ssize_t L = x.shape[0]
    out_arr = np.empty(L, dtype=np.float64)
    if L == 0:
        return out_arr
    cdef double[::1] out = out_arr
    ctab_arr = np.empty(L, dtype=np.float64)
    stab_arr = np.empty(L, dtype=np.float64)
    cdef double[::1] ctab = ctab_arr
    cdef double[::1] stab = stab_arr
    cdef double base = 2.0 * PI / L
    cdef Py_ssize_t m, k, j, idx
    cdef double acc_re, acc_im, xj
    for m in range(L):
        ctab[m] = cos(base * m)
        stab[m] = sin(base * m)
    for k in range(L):
        acc_re = 0.0
        acc_im = 0.0
        idx = 0
        for j in range(L):
            xj = x[j]
            acc_re += xj * ctab[idx]
            acc_im -= xj * stab[idx]
            idx += k
            if idx >= L:
                idx -= L
        out[k] = sqrt(acc_re * acc_re + acc_im * acc_im)
    return out_arr


def fft_pow2_magnitude(double[::1] x):
    """Magnitude spectrum via iterative radix-2 Cooley-Tukey (L = 2**p)."""
    cdef Py_ssize_t L = x.shape[0]
    re_arr = np.empty(L, dtype=np.float64)
    im_arr = np.zeros(L, dtype=np.float64)
    out_arr = np.empty(L, dtype=np.float64)
    cdef double[::1] re = re_arr
    cdef double[::1] im = im_arr
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, j, k, bit, size, half, m
    cdef double step, ang, wr, wi, tr, ti, tmp
    for i in range(L):
        re[i] = x[i]
    j = 0
    for i in range(1, L):
        bit = L >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j ^= bit
        if i < j:
            tmp = re[i]
            re[i] = re[j]
            re[j] = tmp
            tmp = im[i]
            im[i] = im[j]
            im[j] = tmp
    size = 2
    while size <= L:
        half = size >> 1
        step = -2.0 * PI / size
        for m in range(half):
            ang = step * m
            wr = cos(ang)
            wi = sin(ang)
            i = m
            while i < L:
                k = i + half
                tr = wr * re[k] - wi * im[k]
                ti = wr * im[k] + wi * re[k]
                re[k] = re[i] - tr
                im[k] = im[i] - ti
                re[i] += tr
                im[i] += ti
                i += size
        size <<= 1
    for i in range(L):
        out[i] = sqrt(re[i] * re[i] + im[i] * im[i])
    return out_arr


cdef double _max_offdiag(double[:, ::1] a, Py_ssize_t n):
    cdef double m = 0.0
    cdef double v
    cdef Py_ssize_t p, q
    for p in range(n - 1):
        for q in range(p + 1, n):
            v = fabs(a[p, q])
            if v > m:
                m = v
    return m


def jacobi_sweeps(double[:, ::1] a, double[:, ::1] u, double off_tol, int max_sweeps):
    """Cyclic Jacobi rotations on symmetric ``a`` in place; ``u`` accumulates."""
    cdef Py_ssize_t n = a.shape[0]
    cdef int sweeps = 0
    cdef Py_ssize_t p, q, i
    cdef double maxoff, apq, theta, t, c, s, tau, app, aqq, aip, aiq, uip, uiq, sign
    while sweeps < max_sweeps:
        maxoff = _max_offdiag(a, n)
        if maxoff <= off_tol:
            return sweeps, maxoff
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta > 1e150 or theta < -1e150:
                    t = 1.0 / (2.0 * theta)
                else:
                    sign = 1.0 if theta >= 0.0 else -1.0
                    t = sign / (fabs(theta) + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                tau = s / (1.0 + c)
                app = a[p, p]
                aqq = a[q, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for i in range(n):
                    if i != p and i != q:
                        aip = a[i, p]
                        aiq = a[i, q]
                        a[i, p] = aip - s * (aiq + tau * aip)
                        a[p, i] = a[i, p]
                        a[i, q] = aiq + s * (aip - tau * aiq)
                        a[q, i] = a[i, q]
                for i in range(n):
                    uip = u[i, p]
                    uiq = u[i, q]
                    u[i, p] = uip - s * (uiq + tau * uip)
                    u[i, q] = uiq + s * (uip - tau * uiq)
        sweeps += 1
    return sweeps, _max_offdiag(a, n)
