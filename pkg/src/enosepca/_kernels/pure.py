"""Pure-Python kernel backend.

Mirrors the compiled backend (``enosepca._native``) operation for
operation: same loop order, same accumulation order, same libm calls.
That keeps the two backends numerically interchangeable (identical to
the last bit on SSE2 hardware) so either one can back the public API.
"""

from __future__ import annotations

from math import cos, pi, sin, sqrt

import numpy as np


def dft_magnitude(x: np.ndarray) -> np.ndarray:
    """Magnitude spectrum by direct O(L^2) summation.

    Returns |X_k| for k = 0..L-1 with X_k = sum_j x_j * exp(-2i*pi*j*k/L).
    This is the oracle transform: no fast path, no recursion.
    """
    L = x.shape[0]
    out = np.empty(L, dtype=np.float64)
    if L == 0:
        return out
    xs = x.tolist()
    base = 2.0 * pi / L
    ctab = [cos(base * m) for m in range(L)]
    stab = [sin(base * m) for m in range(L)]
    for k in range(L):
        acc_re = 0.0
        acc_im = 0.0
        idx = 0
        for j in range(L):
            xj = xs[j]
            acc_re += xj * ctab[idx]
            acc_im -= xj * stab[idx]
            idx += k
            if idx >= L:
                idx -= L
        out[k] = sqrt(acc_re * acc_re + acc_im * acc_im)
    return out


def fft_pow2_magnitude(x: np.ndarray) -> np.ndarray:
    """Magnitude spectrum via iterative radix-2 Cooley-Tukey.

    Requires len(x) to be a power of two (the caller dispatches).
    """
    L = x.shape[0]
    re = x.tolist()
    im = [0.0] * L
    # bit-reversal permutation
    j = 0
    for i in range(1, L):
        bit = L >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j ^= bit
        if i < j:
            re[i], re[j] = re[j], re[i]
            im[i], im[j] = im[j], im[i]
    size = 2
    while size <= L:
        half = size >> 1
        step = -2.0 * pi / size
        for m in range(half):
            ang = step * m
            wr = cos(ang)
            wi = sin(ang)
            for i in range(m, L, size):
                k = i + half
                tr = wr * re[k] - wi * im[k]
                ti = wr * im[k] + wi * re[k]
                re[k] = re[i] - tr
                im[k] = im[i] - ti
                re[i] += tr
                im[i] += ti
        size <<= 1
    out = np.empty(L, dtype=np.float64)
    for i in range(L):
        out[i] = sqrt(re[i] * re[i] + im[i] * im[i])
    return out


def _max_offdiag(a: np.ndarray, n: int) -> float:
    m = 0.0
    for p in range(n - 1):
        for q in range(p + 1, n):
            v = abs(a[p, q])
            if v > m:
                m = v
    return m


def jacobi_sweeps(a: np.ndarray, u: np.ndarray, off_tol: float, max_sweeps: int):
    """Run cyclic Jacobi rotations on symmetric ``a`` in place.

    ``a`` converges toward a diagonal matrix and ``u`` (identity on
    entry) accumulates the rotations, so a_in = u @ diag(a_out) @ u.T.
    Returns (sweeps_done, max_offdiag) and leaves the convergence
    decision to the caller.
    """
    n = a.shape[0]
    sweeps = 0
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
                    t = sign / (abs(theta) + sqrt(theta * theta + 1.0))
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
