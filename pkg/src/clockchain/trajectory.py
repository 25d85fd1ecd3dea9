"""Seeded Monte Carlo simulation of individual measurement chains.

Each trajectory draws a uniformly random true phase, evolves the
reference state to it, and walks it through k observers.  Every observer
privately draws a uniform apparatus orientation, samples an outcome from
the Born rule, converts it to the time estimate
``alpha + 2*pi*r/(N+1)``, and leaves the collapsed phase state behind
for the next observer.

Reproducibility contract: all randomness of an experiment comes from a
single PCG64 generator seeded through ``numpy.random.SeedSequence(seed)``.
Trial i consumes exactly row i of the (trials, 1 + 2k) uniform matrix
drawn from that stream, so each trajectory is a pure function of
(seed, trial index).  Execution is chunked to bound memory; chunk
boundaries slice the same stream, and the final reduction runs over the
fully assembled per-trial costs, so results do not depend on the chunk
size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import TWO_PI, SymmetricState, _readonly
from .cost import CostFunction, default_cost, eval_cost

#: arbitrary fixed default seed so bare invocations are reproducible
DEFAULT_SEED = 0xC10C

_DEFAULT_CHUNK = 8192


@dataclass(frozen=True)
class ObservationRound:
    """One observer's private orientation, outcome, estimate and cost."""

    orientation: float
    outcome: int
    estimate: float
    cost: float


@dataclass(frozen=True)
class TrajectoryRecord:
    """Full history of a single simulated measurement chain."""

    true_phase: float
    rounds: tuple

    def __post_init__(self):
        if not 0.0 <= self.true_phase < TWO_PI:
            raise ValueError(f"true phase {self.true_phase!r} outside [0, 2*pi)")
        for rnd in self.rounds:
            if not 0.0 <= rnd.estimate < TWO_PI:
                raise ValueError(f"estimate {rnd.estimate!r} outside [0, 2*pi)")
        object.__setattr__(self, "rounds", tuple(self.rounds))


@dataclass(frozen=True)
class McEstimate:
    """Aggregated Monte Carlo costs: one mean and standard error per observer."""

    mean_costs: np.ndarray
    stderrs: np.ndarray
    trials: int
    seed: int

    def __post_init__(self):
        mean = np.asarray(self.mean_costs, dtype=float)
        err = np.asarray(self.stderrs, dtype=float)
        if mean.shape != err.shape:
            raise ValueError("mean_costs and stderrs must have matching shapes")
        if not np.all(np.isfinite(err)) or np.any(err < 0.0):
            raise ValueError("standard errors must be finite and nonnegative")
        object.__setattr__(self, "mean_costs", _readonly(mean))
        object.__setattr__(self, "stderrs", _readonly(err))


def _check_delays(delays, k: int):
    if delays is None:
        return None
    arr = np.asarray(delays, dtype=float)
    if arr.shape != (k - 1,):
        raise ValueError(f"delays must supply the {k - 1} inter-round gaps, got shape {arr.shape}")
    return arr


def sample_trajectory(
    rng: np.random.Generator,
    reference: SymmetricState,
    k: int,
    f: CostFunction | None = None,
    delays=None,
    backend: str = "auto",
) -> TrajectoryRecord:
    """Simulate one chain of ``k`` observer rounds.

    Draws the 1 + 2k uniforms of the trajectory from ``rng`` in the fixed
    order ``[t, alpha_1, sel_1, ...]``.  Costs in the record are computed
    by :func:`eval_cost` against the phase accumulated up to each round
    (equal to the true phase whenever ``delays`` is absent).

    Raises
    ------
    ValueError
        If ``k < 1`` or ``delays`` does not have length k - 1.
    """
    if k < 1:
        raise ValueError(f"number of observers must be >= 1, got {k}")
    if f is None:
        f = default_cost()
    delays = _check_delays(delays, k)
    u = np.asarray(rng.random(1 + 2 * k), dtype=float).reshape(1, -1)
    outcomes, estimates, _ = kernels.run_chain_batch(
        reference.amplitudes, u, f.w0, f.weights, delays, backend=backend
    )
    t = TWO_PI * u[0, 0]
    alphas = TWO_PI * u[0, 1::2]
    accrued = np.full(k, t)
    if delays is not None:
        accrued[1:] += np.cumsum(delays)
    rounds = tuple(
        ObservationRound(
            orientation=float(alphas[j]),
            outcome=int(outcomes[0, j]),
            estimate=float(estimates[0, j]),
            cost=float(eval_cost(f, estimates[0, j] - accrued[j])),
        )
        for j in range(k)
    )
    return TrajectoryRecord(true_phase=float(t), rounds=rounds)


def run_experiment(
    reference: SymmetricState,
    k: int,
    trials: int,
    f: CostFunction | None = None,
    seed: int = DEFAULT_SEED,
    delays=None,
    backend: str = "auto",
    chunk_size: int = _DEFAULT_CHUNK,
) -> McEstimate:
    """Aggregate ``trials`` independent trajectories into per-observer costs.

    Deterministic for a fixed seed: rerunning with identical arguments
    reproduces the estimate bit for bit.  Standard errors are the sample
    standard deviation over trials divided by sqrt(trials) (zero when
    ``trials == 1``).

    Raises
    ------
    ValueError
        If ``trials < 1``, ``k < 1`` or ``delays`` has the wrong length.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if k < 1:
        raise ValueError(f"number of observers must be >= 1, got {k}")
    if chunk_size < 1:
        raise ValueError(f"chunk_size must be >= 1, got {chunk_size}")
    if f is None:
        f = default_cost()
    delays = _check_delays(delays, k)

    rng = np.random.default_rng(seed)
    width = 1 + 2 * k
    pieces = []
    remaining = trials
    while remaining:
        n = min(remaining, chunk_size)
        u = rng.random((n, width))
        _, _, costs = kernels.run_chain_batch(
            reference.amplitudes, u, f.w0, f.weights, delays, backend=backend
        )
        pieces.append(costs)
        remaining -= n
    costs = np.vstack(pieces)
    means = costs.sum(axis=0) / trials
    if trials > 1:
        stderrs = costs.std(axis=0, ddof=1) / math.sqrt(trials)
    else:
        stderrs = np.zeros(k)
    return McEstimate(mean_costs=means, stderrs=stderrs, trials=trials, seed=int(seed))
