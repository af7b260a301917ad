"""Gaussian states as real covariance matrices.

A state of ``n`` bosonic modes is a ``2n x 2n`` symmetric matrix in mode
order ``(q_1, p_1, ..., q_n, p_n)`` with vacuum normalized to the identity,
so a bona fide covariance matrix has every symplectic eigenvalue >= 1 and a
pure state has them all equal to 1.  Symplectic spectra are computed from
the Hermitian eigenproblem of ``sigma^{1/2} (i Omega) sigma^{1/2}``, which
is stable for the nearly degenerate spectra random sampling produces.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.linalg import block_diag, expm

from .config import DEFAULT_TOL, Tolerances

__all__ = [
    "GaussianError",
    "CovarianceMatrix",
    "SymplecticMatrix",
    "SymplecticSpectrum",
    "ModePartition",
    "ValidityReport",
    "WilliamsonDecomposition",
    "symplectic_form",
    "validate_cm",
    "symplectic_spectrum",
    "williamson",
    "marginal_cm",
    "single_mode_spectra",
    "two_mode_squeezed",
    "random_symplectic",
    "random_cm",
    "gaussian_purify",
    "local_normal_form",
    "is_pure_cm",
]


class GaussianError(ValueError):
    """A covariance matrix failed validation or an operation precondition."""


@functools.lru_cache(maxsize=None)
def _omega(n_modes: int) -> np.ndarray:
    """Symplectic form, read-only: antisymmetric 2x2 blocks down the diagonal."""
    omega = np.zeros((2 * n_modes, 2 * n_modes))
    for k in range(n_modes):
        omega[2 * k, 2 * k + 1] = 1.0
        omega[2 * k + 1, 2 * k] = -1.0
    omega.setflags(write=False)
    return omega


def _as_matrix(sigma: "np.ndarray | CovarianceMatrix") -> np.ndarray:
    return sigma.entries if isinstance(sigma, CovarianceMatrix) else np.asarray(sigma, dtype=np.float64)


def _check_shape_symmetry(m: np.ndarray, tol: Tolerances) -> tuple[int, float]:
    """Shape and symmetry gate shared by constructors and ``validate_cm``."""
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise GaussianError(f"covariance matrix must be square, got shape {m.shape}")
    if m.shape[0] % 2 != 0 or m.shape[0] == 0:
        raise GaussianError(f"covariance matrix needs an even dimension, got {m.shape[0]}")
    if not np.all(np.isfinite(m)):
        raise GaussianError("covariance matrix has non-finite entries")
    defect = float(np.max(np.abs(m - m.T)))
    if defect > tol.validation:
        raise GaussianError(f"covariance matrix is not symmetric (defect {defect:.3e})")
    return m.shape[0] // 2, defect


def _raw_symplectic_spectrum(m: np.ndarray) -> np.ndarray:
    """Unclipped symplectic eigenvalues of a symmetric positive definite matrix."""
    w, v = np.linalg.eigh(m)
    if float(w[0]) <= 0.0:
        raise GaussianError(f"covariance matrix is not positive definite (eigenvalue {float(w[0]):.3e})")
    root = (v * np.sqrt(w)) @ v.T
    n = m.shape[0] // 2
    k = root @ (1j * _omega(n)) @ root
    ev = np.linalg.eigvalsh(k)
    return ev[n:]  # spectrum of iK is {+-s_j}; positive half, ascending


@dataclass(frozen=True)
class CovarianceMatrix:
    """Bona fide covariance matrix: symmetric with symplectic spectrum >= 1."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        m = _as_matrix(self.entries)
        tol = DEFAULT_TOL
        _check_shape_symmetry(m, tol)
        m = 0.5 * (m + m.T)
        raw = _raw_symplectic_spectrum(m)
        if float(raw[0]) < 1.0 - tol.bona_fide:
            raise GaussianError(
                f"covariance matrix is not bona fide: smallest symplectic eigenvalue {float(raw[0]):.12g}"
            )
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)
        object.__setattr__(self, "_raw_sspec", raw)

    @property
    def n_modes(self) -> int:
        return self.entries.shape[0] // 2


@dataclass(frozen=True)
class SymplecticMatrix:
    """Real matrix satisfying ``S Omega S^T = Omega``."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.entries, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2 != 0 or m.shape[0] == 0:
            raise GaussianError(f"symplectic matrix must be square of even dimension, got {m.shape}")
        n = m.shape[0] // 2
        omega = _omega(n)
        defect = float(np.max(np.abs(m @ omega @ m.T - omega)))
        if defect > DEFAULT_TOL.symplectic:
            raise GaussianError(f"matrix is not symplectic (defect {defect:.3e})")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def n_modes(self) -> int:
        return self.entries.shape[0] // 2

    def inverse(self) -> np.ndarray:
        """Closed-form symplectic inverse ``-Omega S^T Omega``."""
        omega = _omega(self.n_modes)
        return -omega @ self.entries.T @ omega


@dataclass(frozen=True)
class SymplecticSpectrum:
    """Symplectic eigenvalues, ascending, one per mode, each >= 1."""

    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=np.float64).reshape(-1).copy()
        if v.size == 0:
            raise GaussianError("symplectic spectrum must be non-empty")
        if np.any(np.diff(v) < 0):
            raise GaussianError("symplectic spectrum must be sorted ascending")
        if float(v[0]) < 1.0:
            raise GaussianError(f"symplectic eigenvalues must be >= 1, got {float(v[0]):.12g}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def n_modes(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class ModePartition:
    """Consecutive grouping of modes into parties: one size per party."""

    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        sizes = tuple(int(s) for s in self.sizes)
        object.__setattr__(self, "sizes", sizes)
        if not sizes or any(s < 1 for s in sizes):
            raise GaussianError(f"partition sizes must be positive, got {sizes}")

    @property
    def n_parties(self) -> int:
        return len(self.sizes)

    @property
    def n_modes(self) -> int:
        return sum(self.sizes)

    def party_modes(self, party: int) -> range:
        if not 0 <= party < self.n_parties:
            raise GaussianError(f"party index {party} out of range for {self.n_parties} parties")
        start = sum(self.sizes[:party])
        return range(start, start + self.sizes[party])


@dataclass(frozen=True)
class ValidityReport:
    n_modes: int
    symmetry_defect: float
    min_symplectic_eigenvalue: float
    is_valid: bool
    is_pure: bool

    def to_dict(self) -> dict:
        return {
            "n_modes": self.n_modes,
            "symmetry_defect": self.symmetry_defect,
            "min_symplectic_eigenvalue": self.min_symplectic_eigenvalue,
            "is_valid": self.is_valid,
            "is_pure": self.is_pure,
        }


@dataclass(frozen=True)
class WilliamsonDecomposition:
    """Normal form ``S sigma S^T = D`` with ``D = diag(s_1, s_1, ..., s_n, s_n)``.

    ``residual_reconstruction`` and ``residual_symplectic`` report the
    achieved max-norm defects of the two defining identities; callers decide
    whether a near-degenerate spectrum makes a larger residual acceptable.
    """

    symplectic: SymplecticMatrix
    spectrum: SymplecticSpectrum
    residual_reconstruction: float
    residual_symplectic: float

    @property
    def diagonal(self) -> np.ndarray:
        return np.repeat(self.spectrum.values, 2)

    def diagonal_matrix(self) -> np.ndarray:
        return np.diag(self.diagonal)


def symplectic_form(n_modes: int) -> SymplecticMatrix:
    """The symplectic form Omega in interleaved ``(q, p)`` mode order."""
    if n_modes < 1:
        raise GaussianError(f"mode count must be positive, got {n_modes}")
    return SymplecticMatrix(_omega(n_modes))


def validate_cm(sigma: np.ndarray | CovarianceMatrix, tol: Tolerances = DEFAULT_TOL) -> ValidityReport:
    """Check a symmetric matrix against the bona fide condition.

    Shape defects and asymmetry beyond tolerance raise; a matrix that is
    merely not a quantum state (symplectic eigenvalue below 1) is reported
    with ``is_valid=False``.  Positive definiteness failures report
    ``min_symplectic_eigenvalue = nan``.
    """
    m = _as_matrix(sigma)
    n, defect = _check_shape_symmetry(m, tol)
    m = 0.5 * (m + m.T)
    try:
        raw = _raw_symplectic_spectrum(m)
    except GaussianError:
        return ValidityReport(n, defect, float("nan"), False, False)
    s_min = float(raw[0])
    is_valid = s_min >= 1.0 - tol.bona_fide
    is_pure = is_valid and float(raw[-1]) <= 1.0 + tol.purity
    return ValidityReport(n, defect, s_min, is_valid, is_pure)


def symplectic_spectrum(sigma: CovarianceMatrix, tol: Tolerances = DEFAULT_TOL) -> SymplecticSpectrum:
    """Symplectic eigenvalues of a bona fide matrix, clipped up to exactly 1."""
    raw = getattr(sigma, "_raw_sspec", None)
    if raw is None:
        raw = _raw_symplectic_spectrum(_as_matrix(sigma))
    if float(raw[0]) < 1.0 - tol.bona_fide:
        raise GaussianError(
            f"smallest symplectic eigenvalue {float(raw[0]):.12g} is below 1 beyond tolerance"
        )
    return SymplecticSpectrum(np.maximum(raw, 1.0))


def is_pure_cm(sigma: CovarianceMatrix, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True when every symplectic eigenvalue is within tolerance of 1."""
    values = symplectic_spectrum(sigma, tol).values
    return float(values[-1]) <= 1.0 + tol.purity


def williamson(sigma: CovarianceMatrix, tol: Tolerances = DEFAULT_TOL) -> WilliamsonDecomposition:
    """Williamson normal form of a positive definite symmetric matrix.

    Builds the symplectic basis from the eigenvectors of the Hermitian
    matrix ``sigma^{1/2} (i Omega) sigma^{1/2}`` and polishes it with one
    symplectic Gram-Schmidt pass, which keeps clusters of nearly equal
    symplectic eigenvalues stable.
    """
    m = _as_matrix(sigma)
    n, _ = _check_shape_symmetry(m, tol)
    m = 0.5 * (m + m.T)
    omega = _omega(n)

    w, v = np.linalg.eigh(m)
    if float(w[0]) <= 0.0:
        raise GaussianError(f"matrix is not positive definite (eigenvalue {float(w[0]):.3e})")
    root = (v * np.sqrt(w)) @ v.T
    ev, u = np.linalg.eigh(root @ (1j * omega) @ root)
    s = ev[n:]  # positive half, ascending
    cols = u[:, n:]

    # Eigenvector u = (x + i y)/sqrt(2) with x, y an orthonormal pair gives
    # the symplectic basis columns q = root x / sqrt(s), p = -root y / sqrt(s).
    r = np.zeros((2 * n, 2 * n))
    sqrt2 = np.sqrt(2.0)
    for k in range(n):
        x = sqrt2 * cols[:, k].real
        y = sqrt2 * cols[:, k].imag
        r[:, 2 * k] = root @ x / np.sqrt(s[k])
        r[:, 2 * k + 1] = -(root @ y) / np.sqrt(s[k])

    # Symplectic Gram-Schmidt: project out earlier pairs, then normalize the
    # pair so that q^T Omega p = 1 exactly.
    for k in range(n):
        q = r[:, 2 * k].copy()
        p = r[:, 2 * k + 1].copy()
        for j in range(k):
            qj = r[:, 2 * j]
            pj = r[:, 2 * j + 1]
            for vec in (q, p):
                a = -(pj @ omega @ vec)
                b = qj @ omega @ vec
                vec -= a * qj + b * pj
        c = float(q @ omega @ p)
        q /= np.sqrt(abs(c))
        p /= np.sign(c) * np.sqrt(abs(c))
        r[:, 2 * k] = q
        r[:, 2 * k + 1] = p

    s_matrix = -omega @ r.T @ omega  # inverse of the symplectic r
    d = np.diag(np.repeat(s, 2))
    residual_rec = float(np.max(np.abs(s_matrix @ m @ s_matrix.T - d)))
    residual_sym = float(np.max(np.abs(s_matrix @ omega @ s_matrix.T - omega)))
    if float(s[0]) < 1.0 - tol.bona_fide:
        raise GaussianError(
            f"smallest symplectic eigenvalue {float(s[0]):.12g} is below 1 beyond tolerance"
        )
    return WilliamsonDecomposition(
        symplectic=SymplecticMatrix(s_matrix),
        spectrum=SymplecticSpectrum(np.maximum(s, 1.0)),
        residual_reconstruction=residual_rec,
        residual_symplectic=residual_sym,
    )


def _party_rows(partition: ModePartition, parties: Iterable[int]) -> np.ndarray:
    rows: list[int] = []
    for party in sorted(set(int(p) for p in parties)):
        for mode in partition.party_modes(party):
            rows.extend((2 * mode, 2 * mode + 1))
    return np.asarray(rows, dtype=np.intp)


def marginal_cm(sigma: CovarianceMatrix, partition: ModePartition, keep: Iterable[int]) -> CovarianceMatrix:
    """Covariance matrix of the parties in ``keep`` (ascending order)."""
    if partition.n_modes != sigma.n_modes:
        raise GaussianError(
            f"partition covers {partition.n_modes} modes but the matrix has {sigma.n_modes}"
        )
    keep = tuple(keep)
    if not keep:
        raise GaussianError("must keep at least one party")
    rows = _party_rows(partition, keep)
    return CovarianceMatrix(sigma.entries[np.ix_(rows, rows)])


def single_mode_spectra(sigma: CovarianceMatrix) -> np.ndarray:
    """Symplectic eigenvalue of each single-mode marginal, in mode order.

    For a 2x2 block the symplectic eigenvalue is the square root of the
    determinant.
    """
    m = sigma.entries
    out = np.empty(sigma.n_modes)
    for k in range(sigma.n_modes):
        block = m[2 * k : 2 * k + 2, 2 * k : 2 * k + 2]
        det = float(np.linalg.det(block))
        if det < 0.0:
            raise GaussianError(f"single-mode block {k} has negative determinant {det:.3e}")
        out[k] = np.sqrt(det)
    return out


def two_mode_squeezed(r: float) -> CovarianceMatrix:
    """Two-mode squeezed vacuum with squeezing parameter ``r``.

    Globally pure; each single-mode marginal has symplectic eigenvalue
    ``cosh(2r)``.
    """
    c = np.cosh(2.0 * r)
    s = np.sinh(2.0 * r)
    z = np.diag([1.0, -1.0])
    eye = np.eye(2)
    return CovarianceMatrix(np.block([[c * eye, s * z], [s * z, c * eye]]))


def random_symplectic(n_modes: int, z_max: float, rng: np.random.Generator) -> SymplecticMatrix:
    """Random symplectic matrix ``exp(Omega H)`` with ``H`` symmetric Gaussian.

    The generator's spectral norm is clipped to ``z_max`` to keep squeezing
    bounded.  ``z_max = 0`` returns the identity.
    """
    if n_modes < 1:
        raise GaussianError(f"mode count must be positive, got {n_modes}")
    if z_max < 0.0:
        raise GaussianError(f"z_max must be non-negative, got {z_max}")
    h = rng.standard_normal((2 * n_modes, 2 * n_modes))
    h = 0.5 * (h + h.T)
    gen = _omega(n_modes) @ h
    nrm = float(np.linalg.norm(gen, 2))
    if nrm > z_max:
        gen *= 0.0 if z_max == 0.0 else z_max / nrm
    return SymplecticMatrix(expm(gen))


def random_cm(
    n_modes: int,
    rng: np.random.Generator,
    kind: str = "pure",
    s_max: float = 4.0,
    z_max: float = 2.0,
) -> CovarianceMatrix:
    """Random covariance matrix: ``S S^T`` (pure) or ``S D S^T`` (mixed).

    Mixed states draw each symplectic eigenvalue uniformly from
    ``[1, s_max]``.
    """
    s = random_symplectic(n_modes, z_max, rng).entries
    if kind == "pure":
        sigma = s @ s.T
    elif kind == "mixed":
        if s_max < 1.0:
            raise GaussianError(f"s_max must be at least 1, got {s_max}")
        d = rng.uniform(1.0, s_max, n_modes)
        sigma = (s * np.repeat(d, 2)) @ s.T
    else:
        raise GaussianError(f"kind must be 'pure' or 'mixed', got {kind!r}")
    return CovarianceMatrix(0.5 * (sigma + sigma.T))


def gaussian_purify(sigma: CovarianceMatrix, tol: Tolerances = DEFAULT_TOL) -> CovarianceMatrix:
    """Pure 2n-mode extension whose first n modes marginalize back to ``sigma``.

    Each normal-form mode is linked to one ancilla mode by a two-mode
    squeezed pair with ``cosh(2r_i) = s_i``; a pure input therefore comes
    back as ``sigma`` with ``n`` vacuum ancilla modes appended.
    """
    n = sigma.n_modes
    dec = williamson(sigma, tol)
    s = np.maximum(symplectic_spectrum(sigma, tol).values, 1.0)
    r = dec.symplectic.inverse()
    d = np.diag(np.repeat(s, 2))
    big = np.zeros((4 * n, 4 * n))
    big[: 2 * n, : 2 * n] = d
    big[2 * n :, 2 * n :] = d
    z = np.diag([1.0, -1.0])
    for i in range(n):
        c = np.sqrt(max(s[i] * s[i] - 1.0, 0.0))
        big[2 * i : 2 * i + 2, 2 * n + 2 * i : 2 * n + 2 * i + 2] = c * z
        big[2 * n + 2 * i : 2 * n + 2 * i + 2, 2 * i : 2 * i + 2] = c * z
    t = block_diag(r, np.eye(2 * n))
    out = t @ big @ t.T
    return CovarianceMatrix(0.5 * (out + out.T))


def local_normal_form(
    sigma: CovarianceMatrix, partition: ModePartition, tol: Tolerances = DEFAULT_TOL
) -> tuple[CovarianceMatrix, tuple[tuple[float, ...], ...]]:
    """Bring every party's diagonal block to Williamson normal form.

    Applies one local symplectic per party, so all global symplectic
    invariants (in particular the joint symplectic spectrum) are unchanged.
    Returns the transformed matrix and, per party, the ascending local
    symplectic eigenvalues of that party's marginal.
    """
    if partition.n_modes != sigma.n_modes:
        raise GaussianError(
            f"partition covers {partition.n_modes} modes but the matrix has {sigma.n_modes}"
        )
    blocks: list[np.ndarray] = []
    local_spectra: list[tuple[float, ...]] = []
    for party in range(partition.n_parties):
        rows = _party_rows(partition, (party,))
        block = sigma.entries[np.ix_(rows, rows)]
        dec = williamson(CovarianceMatrix(block), tol)
        blocks.append(dec.symplectic.entries)
        local_spectra.append(tuple(float(x) for x in dec.spectrum.values))
    l = block_diag(*blocks)
    out = l @ sigma.entries @ l.T
    return CovarianceMatrix(0.5 * (out + out.T)), tuple(local_spectra)
