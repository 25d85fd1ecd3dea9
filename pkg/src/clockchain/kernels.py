"""Measurement-chain kernel dispatch: compiled lane with numpy fallback.

The compiled Cython extension is preferred when it imported cleanly; the
numpy lane is always available.  Selection can be forced per call with
``backend=`` or globally with the ``CLOCKCHAIN_KERNEL`` environment
variable (``compiled`` or ``python``).

Kernel contract
---------------
``run_chain_batch(amplitudes, uniforms, w0, weights, delays=None)``
simulates one measurement chain per row of ``uniforms``:

* ``amplitudes``: complex reference-state vector of length N+1.
* ``uniforms``: float64 array of shape (trials, 1 + 2k) holding the
  uniform variates of each trajectory in the fixed order
  ``[t, alpha_1, sel_1, ..., alpha_k, sel_k]`` (all scaled from [0, 1)).
  Row i is the entire randomness of trial i.
* ``w0, weights``: Fourier data of the cost function.
* ``delays``: optional k-1 evolution times inserted between rounds.

Returns ``(outcomes, estimates, costs)``, each of shape (trials, k).
Outcome selection is inverse-CDF: the first r with ``sel <= cdf[r]``
(ties toward the lower index), falling back to r = N when roundoff
leaves ``cdf[N]`` marginally below ``sel``.  Costs are measured against
the phase the clock has actually accumulated by each round, which is
what makes them invariant under inter-round delays.
"""

from __future__ import annotations

import os

from . import _pykernels

try:
    from . import _ckernel
except ImportError:  # extension not built on this install
    _ckernel = None

COMPILED_AVAILABLE = _ckernel is not None


def available_backends() -> tuple:
    return ("compiled", "python") if COMPILED_AVAILABLE else ("python",)


def default_backend() -> str:
    """Lane used for ``backend='auto'``, honouring CLOCKCHAIN_KERNEL."""
    env = os.environ.get("CLOCKCHAIN_KERNEL", "").strip().lower()
    if env in ("compiled", "python"):
        return env
    return "compiled" if COMPILED_AVAILABLE else "python"


def _resolve(backend: str):
    if backend == "auto":
        backend = default_backend()
    if backend == "python":
        return _pykernels
    if backend == "compiled":
        if _ckernel is None:
            raise RuntimeError("compiled kernel requested but the extension is not built")
        return _ckernel
    raise ValueError(f"unknown kernel backend {backend!r}")


def run_chain_batch(amplitudes, uniforms, w0, weights, delays=None, backend: str = "auto"):
    """Run one measurement chain per row of ``uniforms``; see module docs."""
    impl = _resolve(backend)
    return impl.run_chain_batch(amplitudes, uniforms, w0, weights, delays)
