"""Central numeric tolerances shared by every module.

All comparison thresholds live in one frozen record so that tests, the
service layer, and the CLI agree on what counts as "equal", "valid" and
"violated".  Callers may pass a custom record to most entry points; the
module-level :data:`DEFAULT_TOL` is used everywhere else.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Numeric thresholds, loosest to tightest use listed per field."""

    #: state-vector normalization defect
    normalization: float = 1e-12
    #: hermiticity / trace / symmetry defects of matrices
    validation: float = 1e-10
    #: eigenvalues of a density matrix may undershoot 0 by this much
    eigenvalue_floor: float = 1e-10
    #: rank cutoff when purifying a density matrix
    rank_cutoff: float = 1e-12
    #: symplectic eigenvalues may undershoot 1 by this much
    bona_fide: float = 1e-8
    #: defect of the defining identity of a symplectic matrix
    symplectic: float = 1e-8
    #: all symplectic eigenvalues within this of 1 counts as a pure state
    purity: float = 1e-8
    #: reconstruction / symplectic-identity residual of a normal-form factorization
    decomposition_residual: float = 1e-7
    #: relaxed residual when symplectic eigenvalues are nearly degenerate
    decomposition_residual_degenerate: float = 1e-6
    #: slack below the negative of this counts as a violation
    violation: float = 1e-9
    #: slack below the negative of this is serialized as a counterexample witness
    witness: float = 1e-6


#: shared default record
DEFAULT_TOL = Tolerances()

#: default master seed so bare sampling invocations are reproducible
DEFAULT_SEED = 1729
