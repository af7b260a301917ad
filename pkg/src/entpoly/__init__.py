"""Entropic polygon relations for discrete and Gaussian quantum states.

Core objects live in :mod:`entpoly.discrete` and :mod:`entpoly.gaussian`,
entropy evaluation in :mod:`entpoly.entropy`, the inequality checks in
:mod:`entpoly.relations`, and random-state campaigns plus the verdict
matrix in :mod:`entpoly.campaigns`.  The HTTP service and CLI are thin
wrappers over those functions.
"""

from .campaigns import CampaignConfig, CampaignReport, run_campaign, table1
from .config import DEFAULT_SEED, DEFAULT_TOL, Tolerances
from .discrete import (
    DensityMatrix,
    DimsLayout,
    Spectrum,
    StateError,
    StateVector,
    build_state_vector,
    ghz_state,
    haar_random_pure,
    marginal_of_pure,
    partial_trace,
    purify,
    random_density,
    spectrum,
    w_class_state,
)
from .entropy import (
    EntropySpec,
    entropy_discrete,
    entropy_gaussian,
    entropy_of_state,
    g_factor,
    monotonicity_scan,
)
from .gaussian import (
    CovarianceMatrix,
    GaussianError,
    ModePartition,
    SymplecticSpectrum,
    gaussian_purify,
    marginal_cm,
    random_cm,
    single_mode_spectra,
    symplectic_spectrum,
    two_mode_squeezed,
    validate_cm,
    williamson,
)
from .relations import (
    gaussian_marginal_check,
    ghz_monogamy_demo,
    lemma1_check,
    mutual_information,
    one_to_rest,
    polygon_check,
    purified_equivalence_demo,
    qubit_marginal_check,
    subadditivity_check,
    theorem2_proof_trace,
    weak_majorization,
    wstate_violation,
)

__version__ = "0.1.0"

__all__ = [
    "CampaignConfig",
    "CampaignReport",
    "CovarianceMatrix",
    "DEFAULT_SEED",
    "DEFAULT_TOL",
    "DensityMatrix",
    "DimsLayout",
    "EntropySpec",
    "GaussianError",
    "ModePartition",
    "Spectrum",
    "StateError",
    "StateVector",
    "SymplecticSpectrum",
    "Tolerances",
    "build_state_vector",
    "entropy_discrete",
    "entropy_gaussian",
    "entropy_of_state",
    "g_factor",
    "gaussian_marginal_check",
    "gaussian_purify",
    "ghz_monogamy_demo",
    "ghz_state",
    "haar_random_pure",
    "lemma1_check",
    "marginal_cm",
    "marginal_of_pure",
    "monotonicity_scan",
    "mutual_information",
    "one_to_rest",
    "partial_trace",
    "polygon_check",
    "purified_equivalence_demo",
    "purify",
    "qubit_marginal_check",
    "random_cm",
    "random_density",
    "run_campaign",
    "single_mode_spectra",
    "spectrum",
    "subadditivity_check",
    "symplectic_spectrum",
    "table1",
    "theorem2_proof_trace",
    "two_mode_squeezed",
    "validate_cm",
    "w_class_state",
    "weak_majorization",
    "williamson",
    "wstate_violation",
]
