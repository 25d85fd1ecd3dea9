"""States, bases, evolution and projective measurement of an N-qubit clock.

Everything lives in the (N+1)-dimensional symmetric subspace spanned by
the total-excitation states |m>, m = 0..N.  The free Hamiltonian is
diagonal with eigenvalue m on |m> (hbar = 1), so evolution by time t
multiplies the amplitude of |m> by exp(i*t*m).  The optimal reading
apparatus is the orthonormal basis of phase states

    |Psi_r^alpha> = (N+1)**-0.5 * sum_m exp(i*(2*pi*r/(N+1) + alpha)*m) |m>

parameterised by an orientation angle alpha private to each observer.

All values are immutable after construction and all operations are pure
functions, so everything here is safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * np.pi

#: tolerance for constructive identities (normalisation, Hermiticity, trace)
ATOL_CONSTRUCT = 1e-12
#: tolerance floor for spectral / accumulated checks (eigenvalues)
ATOL_SPECTRAL = 1e-10


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class ClockSpec:
    """Dimensions of a clock built from ``n_qubits`` two-level systems.

    The clock Hilbert space is the symmetric subspace, of dimension
    ``n_qubits + 1``; the generator of time evolution is diagonal with
    integer eigenvalues 0..n_qubits in dimensionless frequency units.
    """

    n_qubits: int

    def __post_init__(self):
        if not isinstance(self.n_qubits, (int, np.integer)) or isinstance(self.n_qubits, bool):
            raise TypeError(f"n_qubits must be an integer, got {self.n_qubits!r}")
        if self.n_qubits < 0:
            raise ValueError(f"n_qubits must be >= 0, got {self.n_qubits}")
        object.__setattr__(self, "n_qubits", int(self.n_qubits))

    @property
    def dimension(self) -> int:
        return self.n_qubits + 1

    @property
    def generator(self) -> np.ndarray:
        """Diagonal of the Hamiltonian: the level indices 0..N as floats."""
        return _readonly(np.arange(self.dimension, dtype=float))


@dataclass(frozen=True)
class SymmetricState:
    """Pure state of the clock: complex amplitudes over |0>..|N>.

    The amplitude vector must be normalised to unit Euclidean norm within
    1e-12; use :meth:`normalized` to build one from unnormalised data.
    """

    spec: ClockSpec
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=np.complex128)
        if amp.shape != (self.spec.dimension,):
            raise ValueError(
                f"amplitude vector has shape {amp.shape}, expected ({self.spec.dimension},)"
            )
        norm_sq = float(np.real(np.vdot(amp, amp)))
        if abs(norm_sq - 1.0) > ATOL_CONSTRUCT:
            raise ValueError(f"state is not normalised: sum |a_m|^2 = {norm_sq!r}")
        object.__setattr__(self, "amplitudes", _readonly(amp.copy()))

    @classmethod
    def normalized(cls, spec: ClockSpec, amplitudes) -> "SymmetricState":
        amp = np.asarray(amplitudes, dtype=np.complex128)
        nrm = np.linalg.norm(amp)
        if nrm == 0.0:
            raise ValueError("cannot normalise the zero vector")
        return cls(spec, amp / nrm)

    def overlap(self, other: "SymmetricState") -> complex:
        """Inner product <self|other>."""
        _require_same_spec(self.spec, other.spec)
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class DensityMatrix:
    """Mixed state of the clock: Hermitian, unit-trace, PSD matrix.

    Validated at construction: Hermitian within 1e-12 entrywise, trace 1
    within 1e-12, minimum eigenvalue >= -1e-10.
    """

    spec: ClockSpec
    entries: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.entries, dtype=np.complex128)
        d = self.spec.dimension
        if rho.shape != (d, d):
            raise ValueError(f"density matrix has shape {rho.shape}, expected ({d}, {d})")
        if np.max(np.abs(rho - rho.conj().T)) > ATOL_CONSTRUCT:
            raise ValueError("density matrix is not Hermitian within 1e-12")
        tr = complex(np.trace(rho))
        if abs(tr - 1.0) > ATOL_CONSTRUCT:
            raise ValueError(f"density matrix trace is {tr!r}, expected 1")
        min_eig = float(np.linalg.eigvalsh(rho)[0])
        if min_eig < -ATOL_SPECTRAL:
            raise ValueError(f"density matrix has negative eigenvalue {min_eig!r}")
        object.__setattr__(self, "entries", _readonly(rho.copy()))

    @classmethod
    def from_pure(cls, state: SymmetricState) -> "DensityMatrix":
        a = state.amplitudes
        return cls(state.spec, np.outer(a, a.conj()))


@dataclass(frozen=True)
class PhaseBasis:
    """The optimal von Neumann apparatus at orientation ``alpha``.

    Holds the N+1 rotated phase states |Psi_r^alpha>, r = 0..N.  They are
    validated to be orthonormal and complete within 1e-12 at construction.
    Outcome r at orientation alpha corresponds to the time estimate
    ``alpha + 2*pi*r/(N+1)``.
    """

    spec: ClockSpec
    orientation: float
    states: tuple = field(repr=False)

    def __post_init__(self):
        alpha = float(self.orientation) % TWO_PI
        object.__setattr__(self, "orientation", alpha)
        d = self.spec.dimension
        if len(self.states) != d:
            raise ValueError(f"basis has {len(self.states)} states, expected {d}")
        mat = np.vstack([s.amplitudes for s in self.states])
        gram = mat.conj() @ mat.T
        if np.max(np.abs(gram - np.eye(d))) > ATOL_CONSTRUCT:
            raise ValueError("phase states are not orthonormal within 1e-12")
        resolution = mat.T @ mat.conj()
        if np.max(np.abs(resolution - np.eye(d))) > ATOL_CONSTRUCT:
            raise ValueError("phase states do not resolve the identity within 1e-12")
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "_matrix", _readonly(mat))

    @classmethod
    def build(cls, spec: ClockSpec, alpha: float) -> "PhaseBasis":
        states = tuple(phase_state(spec, r, alpha) for r in range(spec.dimension))
        return cls(spec, alpha, states)

    @property
    def matrix(self) -> np.ndarray:
        """Row r holds the amplitudes of |Psi_r^alpha>."""
        return self._matrix

    def estimates(self) -> np.ndarray:
        """Time estimate associated with each outcome, in [0, 2*pi)."""
        d = self.spec.dimension
        return np.fmod(self.orientation + np.arange(d) * (TWO_PI / d), TWO_PI)


def _require_same_spec(a: ClockSpec, b: ClockSpec) -> None:
    if a.n_qubits != b.n_qubits:
        raise ValueError(
            f"clock dimension mismatch: {a.dimension} vs {b.dimension}"
        )


def phase_state(spec: ClockSpec, r: int, alpha: float = 0.0) -> SymmetricState:
    """Rotated phase state |Psi_r^alpha>.

    Amplitude of |m> is ``(N+1)**-0.5 * exp(i*(2*pi*r/(N+1) + alpha)*m)``.

    Raises
    ------
    IndexError
        If ``r`` is outside 0..N.
    """
    d = spec.dimension
    if not 0 <= r < d:
        raise IndexError(f"outcome index {r} out of range 0..{d - 1}")
    m = np.arange(d)
    phase = TWO_PI * r / d + alpha
    amp = np.exp(1j * phase * m) / np.sqrt(d)
    return SymmetricState(spec, amp)


def reference_phase_state(spec: ClockSpec) -> SymmetricState:
    """Flat reference state: equal real amplitudes (N+1)**-0.5 on every |m>."""
    return phase_state(spec, 0, 0.0)


def optimal_reference_state(spec: ClockSpec) -> SymmetricState:
    """Reference state with minimal single-readout cost at large N.

    Amplitude of |m> is proportional to sin(pi*(m + 1/2)/(N+1)), normalised
    numerically to unit norm.
    """
    d = spec.dimension
    m = np.arange(d)
    return SymmetricState.normalized(spec, np.sin(np.pi * (m + 0.5) / d))


def maximally_mixed(spec: ClockSpec) -> DensityMatrix:
    """The no-information state: identity / (N+1)."""
    d = spec.dimension
    return DensityMatrix(spec, np.eye(d) / d)


def evolve(state, t: float):
    """Evolve a state or density matrix by time ``t`` (periodic mod 2*pi).

    Amplitudes map as ``a_m -> exp(i*t*m) * a_m``; density entries as
    ``rho_mn -> exp(i*t*(m - n)) * rho_mn``.  The sign is fixed so that
    evolving the flat reference by ``2*pi*r/(N+1)`` lands exactly on phase
    state r, which is what makes the outcome-to-time estimator consistent.
    """
    if isinstance(state, SymmetricState):
        m = np.arange(state.spec.dimension)
        return SymmetricState(state.spec, state.amplitudes * np.exp(1j * t * m))
    if isinstance(state, DensityMatrix):
        m = np.arange(state.spec.dimension)
        ph = np.exp(1j * t * m)
        return DensityMatrix(state.spec, state.entries * np.outer(ph, ph.conj()))
    raise TypeError(f"cannot evolve object of type {type(state).__name__}")


def born_probabilities(state: DensityMatrix, basis: PhaseBasis) -> np.ndarray:
    """Outcome distribution of measuring ``state`` with ``basis``.

    Entry r is <Psi_r^alpha| rho |Psi_r^alpha>.  Entries are clipped at
    zero against roundoff; they sum to 1 within 1e-12.
    """
    _require_same_spec(state.spec, basis.spec)
    mat = basis.matrix
    p = np.real(np.einsum("rm,mn,rn->r", mat.conj(), state.entries, mat, optimize=True))
    return _readonly(np.clip(p, 0.0, None))


def collapse(basis: PhaseBasis, r: int) -> DensityMatrix:
    """Post-measurement state for outcome ``r``: the projector |Psi_r^alpha><Psi_r^alpha|.

    Raises
    ------
    IndexError
        If ``r`` is outside 0..N.
    """
    if not 0 <= r < basis.spec.dimension:
        raise IndexError(f"outcome index {r} out of range 0..{basis.spec.dimension - 1}")
    return DensityMatrix.from_pure(basis.states[r])
