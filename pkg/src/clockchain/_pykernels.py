"""Pure numpy measurement-chain kernel (fallback lane).

Vectorised across trials.  The state of one trajectory is an amplitude
vector; measuring it at orientation alpha turns into a length-(N+1) DFT
of the phase-shifted amplitudes, so a whole batch of trials is one
``np.fft.fft`` per observer round.

Both kernel lanes implement the same contract; see
:func:`clockchain.kernels.run_chain_batch` for the layout of the uniform
variates and the tie-breaking rule.
"""

from __future__ import annotations

import numpy as np

TWO_PI = 2.0 * np.pi


def run_chain_batch(amplitudes, uniforms, w0, weights, delays=None):
    amp = np.asarray(amplitudes, dtype=np.complex128)
    u = np.asarray(uniforms, dtype=np.float64)
    if u.ndim != 2 or (u.shape[1] - 1) % 2:
        raise ValueError("uniforms must have shape (trials, 1 + 2k)")
    d = amp.shape[0]
    trials = u.shape[0]
    k = (u.shape[1] - 1) // 2
    if k < 1:
        raise ValueError("need at least one observer round")
    wts = np.asarray(weights, dtype=np.float64)
    if delays is not None:
        delays = np.asarray(delays, dtype=np.float64)
        if delays.shape != (k - 1,):
            raise ValueError(f"delays must have length k-1 = {k - 1}")

    m = np.arange(d)
    step = TWO_PI / d
    inv_d = 1.0 / d
    amp_scale = 1.0 / np.sqrt(d)

    outcomes = np.empty((trials, k), dtype=np.int64)
    estimates = np.empty((trials, k), dtype=np.float64)
    costs = np.empty((trials, k), dtype=np.float64)

    t_true = TWO_PI * u[:, 0]
    t_cur = t_true.copy()
    state = amp[np.newaxis, :] * np.exp(1j * t_true[:, np.newaxis] * m)

    for j in range(k):
        alpha = TWO_PI * u[:, 1 + 2 * j]
        z = np.fft.fft(state * np.exp(-1j * alpha[:, np.newaxis] * m), axis=1)
        cdf = np.cumsum((z.real * z.real + z.imag * z.imag) * inv_d, axis=1)
        sel = u[:, 2 + 2 * j]
        # first r with sel <= cdf[r]; ties toward the lower index, roundoff
        # in cdf[-1] guarded by the clip
        r = np.minimum((cdf < sel[:, np.newaxis]).sum(axis=1), d - 1)
        est = np.fmod(alpha + r * step, TWO_PI)
        diff = est - t_cur
        cost = np.full(trials, float(w0))
        for q, w in enumerate(wts, start=1):
            cost -= w * np.cos(q * diff)
        outcomes[:, j] = r
        estimates[:, j] = est
        costs[:, j] = cost
        if j < k - 1:
            ang = est if delays is None else est + delays[j]
            state = amp_scale * np.exp(1j * ang[:, np.newaxis] * m)
            if delays is not None:
                t_cur = t_cur + delays[j]

    return outcomes, estimates, costs
