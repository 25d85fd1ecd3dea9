"""Periodic cost functions, covariant mean costs and the Holevo bound.

A cost function penalises the difference between estimated and true time
as ``f(t) = w0 - sum_k w_k cos(k*t)`` with nonnegative weights ``w_k``
(finite Fourier sum, even and 2*pi-periodic by construction).  The
default is ``4 sin^2(t/2) = 2 - 2 cos(t)``, which approximates the
quadratic deviation t^2 near zero; t^2 itself is not expressible with
nonnegative weights and is deliberately not supported.

For the optimal covariant apparatus with a uniform prior over the true
time, the mean cost of a state rho depends only on its off-diagonal band
sums ``c_k = sum_m rho[m, m+k]``:

    mean cost = w0 - sum_k w_k * Re(c_k)

:func:`mean_cost_quadrature` evaluates the defining double average over
true time and apparatus orientation on exact trigonometric grids and is
the independent oracle for that formula.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    TWO_PI,
    DensityMatrix,
    PhaseBasis,
    SymmetricState,
    _readonly,
    born_probabilities,
    evolve,
)


@dataclass(frozen=True)
class CostFunction:
    """Even, 2*pi-periodic cost ``w0 - sum_k weights[k-1] * cos(k*t)``."""

    w0: float
    weights: tuple

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1:
            raise ValueError("weights must be a flat sequence")
        if w.size and float(np.min(w)) < 0.0:
            raise ValueError(f"Fourier weights must be nonnegative, got {self.weights!r}")
        object.__setattr__(self, "w0", float(self.w0))
        object.__setattr__(self, "weights", tuple(float(x) for x in w))

    @property
    def order(self) -> int:
        """Highest Fourier index with a weight attached."""
        return len(self.weights)

    @property
    def max_value(self) -> float:
        return self.w0 + sum(self.weights)

    def __call__(self, delta):
        return eval_cost(self, delta)


def default_cost() -> CostFunction:
    """The cost ``4 sin^2(t/2) = 2 - 2 cos(t)``."""
    return CostFunction(2.0, (2.0,))


def eval_cost(f: CostFunction, delta):
    """Evaluate ``f`` at a time difference (scalar or array); even and periodic."""
    delta = np.asarray(delta, dtype=float)
    out = np.full(delta.shape, f.w0)
    for k, w in enumerate(f.weights, start=1):
        out -= w * np.cos(k * delta)
    return float(out) if out.ndim == 0 else out


def holevo_bound(state: SymmetricState, f: CostFunction) -> float:
    """Lower bound on the mean cost over all covariant measurements.

    For a pure state with real nonnegative amplitudes a_m the bound is

        w0 - (1/2) * sum_k w_k * sum_{|m-m'|=k} a_m a_m'

    and it is attained by the phase-state measurement.

    Raises
    ------
    ValueError
        If the amplitudes are complex or negative (the bound assumes the
        phase convention in which they are real and nonnegative).
    """
    amp = state.amplitudes
    if np.max(np.abs(amp.imag)) > 1e-12 or np.min(amp.real) < -1e-12:
        raise ValueError("holevo_bound requires real nonnegative amplitudes")
    a = amp.real
    total = f.w0
    for k, w in enumerate(f.weights, start=1):
        if k >= a.size:
            break
        total -= 0.5 * w * 2.0 * float(np.dot(a[:-k], a[k:]))
    return total


def band_sums(rho: DensityMatrix) -> np.ndarray:
    """Off-diagonal band sums c_k = sum_m rho[m, m+k] for k = 0..N."""
    d = rho.spec.dimension
    return _readonly(np.array([np.trace(rho.entries, offset=k) for k in range(d)]))


def mean_cost_of_state(rho: DensityMatrix, f: CostFunction) -> float:
    """Mean cost of reading ``rho`` with the optimal apparatus, uniform prior.

    Averaged over the true time and the (private, uniform) apparatus
    orientation, the mean cost reduces to ``w0 - sum_k w_k Re(c_k)`` where
    c_k is the k-th band sum of rho.  Validated against
    :func:`mean_cost_quadrature`, which computes the defining average
    directly.
    """
    total = f.w0
    d = rho.spec.dimension
    for k, w in enumerate(f.weights, start=1):
        if k >= d:
            break
        total -= w * float(np.real(np.trace(rho.entries, offset=k)))
    return total


def mean_cost_quadrature(rho: DensityMatrix, f: CostFunction, nodes: int | None = None) -> float:
    """Mean cost evaluated from its definition, by exact quadrature.

    Averages ``sum_r p(r | t, alpha) * f(est_r(alpha) - t)`` over uniform
    grids in the true time t and the orientation alpha, with
    ``est_r(alpha) = alpha + 2*pi*r/(N+1)``.  The integrand is a
    trigonometric polynomial of degree at most N + order(f) in each
    variable, so an M-point uniform grid with ``M >= N + order + 1`` is
    exact up to roundoff.  Independent oracle for
    :func:`mean_cost_of_state`; deliberately built from the measurement
    primitives rather than band sums.
    """
    spec = rho.spec
    degree = spec.n_qubits + f.order
    m = degree + 1 if nodes is None else int(nodes)
    if m < degree + 1:
        raise ValueError(f"need at least {degree + 1} quadrature nodes, got {m}")
    ts = TWO_PI * np.arange(m) / m
    alphas = TWO_PI * np.arange(m) / m
    bases = [PhaseBasis.build(spec, a) for a in alphas]
    total = 0.0
    for t in ts:
        rho_t = evolve(rho, t)
        for basis in bases:
            p = born_probabilities(rho_t, basis)
            total += float(np.dot(p, eval_cost(f, basis.estimates() - t)))
    return total / (m * m)


def mean_cost_analytic(n_qubits: int, k: int) -> float:
    """Closed-form mean cost of observer ``k`` for the flat reference state.

    Equals ``2 * (1 - (N/(N+1))**k)`` under the default cost: 2/(N+1) for
    the first observer, strictly increasing in k, approaching 2 (no
    information) as k grows.

    Raises
    ------
    ValueError
        If ``k < 1`` or ``n_qubits < 0``.
    """
    if k < 1:
        raise ValueError(f"observer index must be >= 1, got {k}")
    if n_qubits < 0:
        raise ValueError(f"n_qubits must be >= 0, got {n_qubits}")
    ratio = n_qubits / (n_qubits + 1)
    return 2.0 * (1.0 - ratio**k)
