"""The measure-and-discard channel and exact observer-chain costs.

A later observer sees the state left behind by the previous one, averaged
over everything it does not know: the previous apparatus orientation
(uniform on [0, 2*pi)) and the previous outcome.  That average is the
channel

    E(rho) = integral dalpha/2pi  sum_r <Psi_r^a|rho|Psi_r^a> |Psi_r^a><Psi_r^a|

which has a simple closed form: every entry on off-diagonal band d of
E(rho) equals c_d/(N+1), where c_d is the band-d sum of rho.  Band sums
therefore contract geometrically, c_d -> c_d * (N+1-|d|)/(N+1), which is
the entire mechanism behind the per-observer cost formula
``2*(1 - (N/(N+1))**k)`` for the flat reference.

:func:`apply_channel_quadrature` evaluates the orientation integral on an
exact trigonometric grid, built from the measurement primitives, and is
the independent oracle for the closed form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    TWO_PI,
    ClockSpec,
    DensityMatrix,
    PhaseBasis,
    SymmetricState,
    _readonly,
    born_probabilities,
    collapse,
    optimal_reference_state,
    reference_phase_state,
)
from .cost import CostFunction, default_cost, mean_cost_of_state

#: reference-state labels used in reports
FLAT = "flat-phase"
OPTIMAL = "optimal"
CUSTOM = "custom"


@dataclass(frozen=True)
class ObserverChainReport:
    """Exact per-observer mean costs along a chain of measurements.

    ``costs[j]`` is the mean cost of observer j+1 (observers count from 1).
    ``states`` optionally stores the pre-measurement state of each
    observer, computed at true time zero; phase covariance of the channel
    recovers every other time.
    """

    spec: ClockSpec
    reference: str
    costs: np.ndarray
    states: tuple | None = None

    def __post_init__(self):
        costs = np.asarray(self.costs, dtype=float)
        if np.any(np.diff(costs) < -1e-12):
            raise ValueError("per-observer costs must be nondecreasing")
        object.__setattr__(self, "costs", _readonly(costs))
        if self.states is not None:
            object.__setattr__(self, "states", tuple(self.states))


def apply_channel(rho: DensityMatrix) -> DensityMatrix:
    """Orientation- and outcome-averaged post-measurement state, closed form.

    Entry (m, n) of the result is c_{n-m}/(N+1) with c_d the band-d sum of
    ``rho``; the diagonal becomes uniform.  Trace-preserving, positive,
    and covariant under time evolution.
    """
    d = rho.spec.dimension
    out = np.empty((d, d), dtype=np.complex128)
    for k in range(d):
        c = np.trace(rho.entries, offset=k) / d
        idx = np.arange(d - k)
        out[idx, idx + k] = c
        if k:
            out[idx + k, idx] = np.conj(c)
    return DensityMatrix(rho.spec, out)


def apply_channel_quadrature(rho: DensityMatrix, nodes: int) -> DensityMatrix:
    """Same channel, evaluated as an explicit average over orientations.

    The integrand is a trigonometric polynomial of degree at most 2N in
    the orientation, so a uniform grid of ``nodes >= 2N + 2`` points
    reproduces the integral exactly up to roundoff.  Serves as the
    independent oracle for :func:`apply_channel`.

    Raises
    ------
    ValueError
        If ``nodes`` is below the exactness threshold 2N + 2.
    """
    spec = rho.spec
    required = 2 * spec.n_qubits + 2
    if nodes < required:
        raise ValueError(
            f"quadrature needs at least {required} orientation nodes for N={spec.n_qubits}, "
            f"got {nodes}"
        )
    d = spec.dimension
    acc = np.zeros((d, d), dtype=np.complex128)
    for i in range(nodes):
        basis = PhaseBasis.build(spec, TWO_PI * i / nodes)
        p = born_probabilities(rho, basis)
        for r in range(d):
            acc += p[r] * collapse(basis, r).entries
    return DensityMatrix(spec, acc / nodes)


def observer_chain_exact(
    reference: SymmetricState,
    k: int,
    f: CostFunction | None = None,
    store_states: bool = False,
) -> ObserverChainReport:
    """Exact mean cost of each of ``k`` successive independent observers.

    Observer 1 reads the pure reference state; observer j+1 reads the
    channel image of observer j's state.  For the flat reference and the
    default cost the result matches ``2*(1 - (N/(N+1))**j)`` to 1e-10.

    Raises
    ------
    ValueError
        If ``k < 1``.
    """
    if k < 1:
        raise ValueError(f"number of observers must be >= 1, got {k}")
    if f is None:
        f = default_cost()
    spec = reference.spec
    rho = DensityMatrix.from_pure(reference)
    costs = np.empty(k)
    states = [] if store_states else None
    for j in range(k):
        if j:
            rho = apply_channel(rho)
        costs[j] = mean_cost_of_state(rho, f)
        if store_states:
            states.append(rho)
    return ObserverChainReport(spec, _reference_label(reference), costs, states)


def _reference_label(reference: SymmetricState) -> str:
    amp = reference.amplitudes
    if np.allclose(amp, reference_phase_state(reference.spec).amplitudes, atol=1e-12, rtol=0.0):
        return FLAT
    if np.allclose(amp, optimal_reference_state(reference.spec).amplitudes, atol=1e-12, rtol=0.0):
        return OPTIMAL
    return CUSTOM
