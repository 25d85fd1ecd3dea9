"""Sequential, non-communicating observers reading an N-qubit phase clock.

The clock is the (N+1)-dimensional symmetric subspace of N two-level
systems; the optimal readout is a von Neumann measurement in a basis of
phase states at a private random orientation.  This package provides the
exact recycling channel describing what each later observer receives, a
seeded Monte Carlo simulator of individual measurement chains, and the
closed-form per-observer cost ``2*(1 - (N/(N+1))**k)`` they both
reproduce for the flat reference state.
"""

from .channel import (
    ObserverChainReport,
    apply_channel,
    apply_channel_quadrature,
    observer_chain_exact,
)
from .core import (
    ClockSpec,
    DensityMatrix,
    PhaseBasis,
    SymmetricState,
    born_probabilities,
    collapse,
    evolve,
    maximally_mixed,
    optimal_reference_state,
    phase_state,
    reference_phase_state,
)
from .cost import (
    CostFunction,
    band_sums,
    default_cost,
    eval_cost,
    holevo_bound,
    mean_cost_analytic,
    mean_cost_of_state,
    mean_cost_quadrature,
)
from .kernels import COMPILED_AVAILABLE, available_backends, default_backend
from .trajectory import (
    DEFAULT_SEED,
    McEstimate,
    ObservationRound,
    TrajectoryRecord,
    run_experiment,
    sample_trajectory,
)

__version__ = "0.1.0"

__all__ = [
    "COMPILED_AVAILABLE",
    "ClockSpec",
    "CostFunction",
    "DEFAULT_SEED",
    "DensityMatrix",
    "McEstimate",
    "ObservationRound",
    "ObserverChainReport",
    "PhaseBasis",
    "SymmetricState",
    "TrajectoryRecord",
    "apply_channel",
    "apply_channel_quadrature",
    "available_backends",
    "band_sums",
    "born_probabilities",
    "collapse",
    "default_backend",
    "default_cost",
    "eval_cost",
    "evolve",
    "holevo_bound",
    "maximally_mixed",
    "mean_cost_analytic",
    "mean_cost_of_state",
    "mean_cost_quadrature",
    "observer_chain_exact",
    "optimal_reference_state",
    "phase_state",
    "reference_phase_state",
    "run_experiment",
    "sample_trajectory",
]
