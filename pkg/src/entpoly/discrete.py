"""Finite-dimensional multipartite states.

Construction, marginals, spectra, purification and seeded random sampling
for state vectors and density matrices on a tensor product of local
Hilbert spaces.  Party 0 is the slowest-varying index of the flattened
state, matching numpy's row-major ``reshape`` and ``np.kron`` order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .config import DEFAULT_TOL, Tolerances

__all__ = [
    "StateError",
    "DimsLayout",
    "StateVector",
    "DensityMatrix",
    "Spectrum",
    "build_state_vector",
    "partial_trace",
    "marginal_of_pure",
    "spectrum",
    "purity",
    "purify",
    "haar_random_pure",
    "haar_random_unitary",
    "random_density",
    "ghz_state",
    "w_class_state",
]


class StateError(ValueError):
    """A state failed validation or an operation precondition."""


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class DimsLayout:
    """Local dimension of each tensor factor (one entry per party).

    Dimension-1 factors are permitted; they carry no state and arise as
    trivial ancillas when purifying a rank-1 density matrix.
    """

    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if not dims:
            raise StateError("layout needs at least one party")
        if any(d < 1 for d in dims):
            raise StateError(f"local dimensions must be positive, got {dims}")

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims))


@dataclass(frozen=True)
class StateVector:
    """Normalized pure state over a :class:`DimsLayout`."""

    amplitudes: np.ndarray
    layout: DimsLayout

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1).copy()
        if amps.size != self.layout.total_dim:
            raise StateError(
                f"amplitude count {amps.size} does not match layout dimension "
                f"{self.layout.total_dim}"
            )
        norm_defect = abs(float(np.vdot(amps, amps).real) - 1.0)
        if norm_defect > DEFAULT_TOL.normalization:
            raise StateError(f"state vector is not normalized (defect {norm_defect:.3e})")
        object.__setattr__(self, "amplitudes", _readonly(amps))

    @property
    def dim(self) -> int:
        return self.layout.total_dim

    def density_matrix(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()), self.layout)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix over a layout."""

    entries: np.ndarray
    layout: DimsLayout

    def __post_init__(self) -> None:
        m = np.asarray(self.entries, dtype=np.complex128)
        d = self.layout.total_dim
        if m.shape != (d, d):
            raise StateError(f"matrix shape {m.shape} does not match layout dimension {d}")
        tol = DEFAULT_TOL
        herm_defect = float(np.max(np.abs(m - m.conj().T))) if d else 0.0
        if herm_defect > tol.validation:
            raise StateError(f"matrix is not Hermitian (defect {herm_defect:.3e})")
        trace_defect = abs(float(np.trace(m).real) - 1.0)
        if trace_defect > tol.validation:
            raise StateError(f"matrix trace differs from 1 (defect {trace_defect:.3e})")
        m = 0.5 * (m + m.conj().T)  # remove float dust, keeps eigh exact-symmetric
        w_min = float(np.linalg.eigvalsh(m)[0])
        if w_min < -tol.eigenvalue_floor:
            raise StateError(f"matrix has a negative eigenvalue ({w_min:.3e})")
        object.__setattr__(self, "entries", _readonly(m))

    @property
    def dim(self) -> int:
        return self.layout.total_dim


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of a density matrix, sorted non-increasing, summing to 1."""

    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=np.float64).reshape(-1).copy()
        if v.size == 0:
            raise StateError("spectrum must be non-empty")
        if np.any(np.diff(v) > 0):
            raise StateError("spectrum must be sorted non-increasing")
        if v[-1] < 0.0 or v[0] > 1.0 + DEFAULT_TOL.validation:
            raise StateError("spectrum entries must lie in [0, 1]")
        if abs(float(v.sum()) - 1.0) > DEFAULT_TOL.validation:
            raise StateError("spectrum must sum to 1")
        object.__setattr__(self, "values", _readonly(v))


def build_state_vector(amplitudes: Sequence[complex], layout: DimsLayout) -> StateVector:
    """Normalize raw amplitudes into a :class:`StateVector`.

    Raises :class:`StateError` if the length is wrong or the vector is zero.
    """
    amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    if amps.size != layout.total_dim:
        raise StateError(
            f"amplitude count {amps.size} does not match layout dimension {layout.total_dim}"
        )
    norm = float(np.linalg.norm(amps))
    if norm == 0.0:
        raise StateError("cannot normalize the zero vector")
    return StateVector(amps / norm, layout)


def _check_parties(keep: Iterable[int], n_parties: int) -> tuple[int, ...]:
    kept = tuple(sorted(int(k) for k in keep))
    if not kept:
        raise StateError("must keep at least one party")
    if len(set(kept)) != len(kept):
        raise StateError(f"duplicate party index in {kept}")
    if kept[0] < 0 or kept[-1] >= n_parties:
        raise StateError(f"party index out of range for {n_parties} parties: {kept}")
    return kept


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Trace out every party not listed in ``keep`` (order preserved ascending)."""
    layout = rho.layout
    kept = _check_parties(keep, layout.n_parties)
    n = layout.n_parties
    t = rho.entries.reshape(layout.dims + layout.dims)
    kept_set = set(kept)
    # einsum integer subscripts: ket axis of a dropped party is contracted
    # against its bra axis by giving both the same label.
    bra = list(range(n))
    ket = [n + k if k in kept_set else k for k in range(n)]
    out = [k for k in kept] + [n + k for k in kept]
    reduced = np.einsum(t, bra + ket, out)
    d_keep = int(np.prod([layout.dims[k] for k in kept]))
    return DensityMatrix(reduced.reshape(d_keep, d_keep), DimsLayout(tuple(layout.dims[k] for k in kept)))


def marginal_of_pure(psi: StateVector, keep: Iterable[int]) -> DensityMatrix:
    """Reduced density matrix of a pure state, without forming the full projector."""
    layout = psi.layout
    kept = _check_parties(keep, layout.n_parties)
    rest = tuple(k for k in range(layout.n_parties) if k not in set(kept))
    t = psi.amplitudes.reshape(layout.dims)
    t = np.transpose(t, kept + rest)
    d_keep = int(np.prod([layout.dims[k] for k in kept]))
    m = t.reshape(d_keep, -1)
    return DensityMatrix(m @ m.conj().T, DimsLayout(tuple(layout.dims[k] for k in kept)))


def spectrum(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOL) -> Spectrum:
    """Eigenvalues of ``rho``: negatives within tolerance clipped to 0, renormalized."""
    w = np.linalg.eigvalsh(rho.entries)
    if float(w[0]) < -tol.eigenvalue_floor:
        raise StateError(f"matrix has a negative eigenvalue ({float(w[0]):.3e})")
    w = np.clip(w, 0.0, None)
    w /= w.sum()
    return Spectrum(w[::-1].copy())


def purity(rho: DensityMatrix) -> float:
    """tr(rho^2), real part."""
    return float(np.real(np.vdot(rho.entries, rho.entries)))


def purify(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOL) -> StateVector:
    """Spectral purification of a density matrix.

    Returns a pure state on layout ``(d, r)`` with the original system as
    party 0 and an ancilla of dimension ``r`` equal to the rank of ``rho``
    (eigenvalues below the rank cutoff are dropped; a pure input yields a
    dimension-1 ancilla).  Tracing out party 1 recovers ``rho``.
    """
    w, v = np.linalg.eigh(rho.entries)
    w = np.clip(w[::-1], 0.0, None)
    v = v[:, ::-1]
    r = int(np.count_nonzero(w > tol.rank_cutoff))
    if r == 0:
        raise StateError("density matrix has no eigenvalue above the rank cutoff")
    d = rho.dim
    # amplitude of |j> x |i> sits at flat index j*r + i
    amps = (v[:, :r] * np.sqrt(w[:r])).reshape(d * r)
    amps /= np.linalg.norm(amps)
    return StateVector(amps, DimsLayout((d, r)))


def haar_random_pure(layout: DimsLayout, rng: np.random.Generator) -> StateVector:
    """Haar-distributed pure state: normalized complex standard normal vector."""
    d = layout.total_dim
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return StateVector(z / np.linalg.norm(z), layout)


def haar_random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix with phase fix."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases


def random_density(dim: int, rank: int, rng: np.random.Generator) -> DensityMatrix:
    """Random density matrix: partial trace of a Haar pure state on ``(dim, rank)``.

    ``rank = 1`` gives a pure state, ``rank = dim`` the Hilbert-Schmidt measure.
    """
    if rank < 1:
        raise StateError(f"rank must be at least 1, got {rank}")
    psi = haar_random_pure(DimsLayout((dim, rank)), rng)
    return marginal_of_pure(psi, (0,))


def ghz_state(n_parties: int) -> StateVector:
    """(|0...0> + |1...1>)/sqrt(2) on ``n_parties`` qubits."""
    if n_parties < 2:
        raise StateError("a GHZ state needs at least two parties")
    amps = np.zeros(2**n_parties, dtype=np.complex128)
    amps[0] = amps[-1] = 1.0 / np.sqrt(2.0)
    return StateVector(amps, DimsLayout((2,) * n_parties))


def w_class_state(amplitudes: Sequence[float]) -> StateVector:
    """Superposition of single-excitation basis states with real amplitudes.

    ``amplitudes[i]`` weights the basis state with the excitation on party
    ``i``; all must be nonzero and their squares must sum to 1.  The
    one-party marginals have eigenvalue pairs ``{a_i^2, 1 - a_i^2}``.
    """
    a = np.asarray(amplitudes, dtype=np.float64).reshape(-1)
    n = a.size
    if n < 2:
        raise StateError("a W-class state needs at least two parties")
    if np.any(a == 0.0):
        raise StateError("W-class amplitudes must all be nonzero")
    if abs(float(np.sum(a * a)) - 1.0) > DEFAULT_TOL.validation:
        raise StateError("squared W-class amplitudes must sum to 1")
    amps = np.zeros(2**n, dtype=np.complex128)
    for i in range(n):
        amps[1 << (n - 1 - i)] = a[i]  # party 0 is the slowest index
    return StateVector(amps, DimsLayout((2,) * n))
