# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled measurement-chain kernel (hot lane).

Scalar per-trial loop over observer rounds: phase-shift the state,
take an explicit length-(N+1) DFT, inverse-CDF sample the outcome,
collapse onto the selected phase state.  Same contract and tie-breaking
rule as the numpy lane in ``_pykernels``.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, fmod, sin, sqrt

cnp.import_array()


def run_chain_batch(amplitudes, uniforms, double w0, weights, delays=None):
    amp_arr = np.ascontiguousarray(amplitudes, dtype=np.complex128)
    u_arr = np.ascontiguousarray(uniforms, dtype=np.float64)
    if u_arr.ndim != 2 or (u_arr.shape[1] - 1) % 2:
        raise ValueError("uniforms must have shape (trials, 1 + 2k)")
    cdef Py_ssize_t d = amp_arr.shape[0]
    cdef Py_ssize_t trials = u_arr.shape[0]
    cdef Py_ssize_t k = (u_arr.shape[1] - 1) // 2
    if k < 1:
        raise ValueError("need at least one observer round")
    wts_arr = np.ascontiguousarray(weights, dtype=np.float64)
    cdef bint use_delays = delays is not None
    if use_delays:
        del_arr = np.ascontiguousarray(delays, dtype=np.float64)
        if del_arr.shape[0] != k - 1 or del_arr.ndim != 1:
            raise ValueError(f"delays must have length k-1 = {k - 1}")
    else:
        del_arr = np.zeros(1, dtype=np.float64)

    # DFT table: row r holds exp(-2i*pi*r*m/d)
    idx = np.arange(d)
    table = np.exp((-2j * np.pi / d) * np.outer(idx, idx))

    out_arr = np.empty((trials, k), dtype=np.int64)
    est_arr = np.empty((trials, k), dtype=np.float64)
    cost_arr = np.empty((trials, k), dtype=np.float64)
    state_arr = np.empty(d, dtype=np.complex128)
    shifted_arr = np.empty(d, dtype=np.complex128)

    cdef const double complex[::1] amp = amp_arr
    cdef double complex[:, ::1] dft = table
    cdef double complex[::1] state = state_arr
    cdef double complex[::1] shifted = shifted_arr
    cdef const double[:, ::1] u = u_arr
    cdef const double[::1] wts = wts_arr
    cdef const double[::1] dels = del_arr
    cdef cnp.int64_t[:, ::1] outcomes = out_arr
    cdef double[:, ::1] estimates = est_arr
    cdef double[:, ::1] costs = cost_arr

    cdef double two_pi = 2.0 * np.pi
    cdef double step = two_pi / d
    cdef double inv_d = 1.0 / d
    cdef double amp_scale = 1.0 / sqrt(<double> d)
    cdef Py_ssize_t n_weights = wts_arr.shape[0]

    cdef Py_ssize_t i, j, m, r, rr
    cdef Py_ssize_t q
    cdef double t_true, t_cur, alpha, sel, acc, ph, est, diff, cost, delay, ang
    cdef double complex z

    with nogil:
        for i in range(trials):
            t_true = two_pi * u[i, 0]
            t_cur = t_true
            for m in range(d):
                ph = t_true * m
                state[m] = amp[m] * (cos(ph) + 1j * sin(ph))
            for j in range(k):
                alpha = two_pi * u[i, 1 + 2 * j]
                for m in range(d):
                    ph = alpha * m
                    shifted[m] = state[m] * (cos(ph) - 1j * sin(ph))
                sel = u[i, 2 + 2 * j]
                acc = 0.0
                r = d - 1
                for rr in range(d):
                    z = 0
                    for m in range(d):
                        z = z + dft[rr, m] * shifted[m]
                    acc = acc + (z.real * z.real + z.imag * z.imag) * inv_d
                    if sel <= acc:
                        r = rr
                        break
                est = fmod(alpha + r * step, two_pi)
                diff = est - t_cur
                cost = w0
                for q in range(n_weights):
                    cost = cost - wts[q] * cos((q + 1) * diff)
                outcomes[i, j] = r
                estimates[i, j] = est
                costs[i, j] = cost
                if j < k - 1:
                    delay = dels[j] if use_delays else 0.0
                    ang = est + delay
                    t_cur = t_cur + delay
                    for m in range(d):
                        ph = ang * m
                        state[m] = amp_scale * (cos(ph) + 1j * sin(ph))

    return out_arr, est_arr, cost_arr
