"""Entropic inequalities between a state and its marginals.

The central objects are the one-to-rest entropy vector ``E_i`` of a pure
multipartite state (the entropy of party ``i``'s marginal, which equals
the entropy across the cut between party ``i`` and everything else) and
two relations on it:

* polygon: each ``E_i`` is at most the sum of all the others;
* subadditivity: the entropy of a joint state is at most the sum of the
  entropies of its two marginals (equivalently, the mutual information is
  non-negative).

Both hold for the von Neumann family in every setting and can fail for
Renyi orders; the checks here quantify slack, hunt for counterexamples,
and trace the intermediate steps of the Gaussian polygon proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .discrete import (
    DensityMatrix,
    DimsLayout,
    StateError,
    StateVector,
    marginal_of_pure,
    partial_trace,
    purify,
    purity,
    spectrum,
    w_class_state,
)
from .entropy import EntropySpec, entropy_discrete, entropy_gaussian
from .gaussian import (
    CovarianceMatrix,
    GaussianError,
    ModePartition,
    is_pure_cm,
    local_normal_form,
    marginal_cm,
    symplectic_spectrum,
)

__all__ = [
    "OneToRestVector",
    "PolygonReport",
    "SubadditivityReport",
    "MarginalReport",
    "WClassScan",
    "EquivalenceReport",
    "Theorem2Trace",
    "GhzDemoReport",
    "one_to_rest",
    "polygon_check",
    "subadditivity_check",
    "mutual_information",
    "qubit_marginal_check",
    "gaussian_marginal_check",
    "weak_majorization",
    "weak_majorization_gap",
    "lemma1_check",
    "transform_polygon",
    "tsallis_from_renyi_transform",
    "wstate_violation",
    "purified_equivalence_demo",
    "Theorem2Geometry",
    "theorem2_geometry",
    "theorem2_trace_from_geometry",
    "theorem2_proof_trace",
    "ghz_monogamy_demo",
]


def _party_groups(n_factors: int, partition: Sequence[int] | None) -> tuple[tuple[int, ...], ...]:
    """Group consecutive tensor factors into parties by size counts."""
    if partition is None:
        sizes = (1,) * n_factors
    else:
        sizes = tuple(int(s) for s in partition)
    if any(s < 1 for s in sizes):
        raise ValueError(f"partition sizes must be positive, got {sizes}")
    if sum(sizes) != n_factors:
        raise ValueError(f"partition {sizes} does not cover {n_factors} tensor factors")
    groups: list[tuple[int, ...]] = []
    start = 0
    for s in sizes:
        groups.append(tuple(range(start, start + s)))
        start += s
    return tuple(groups)


def _as_mode_partition(partition: ModePartition | Sequence[int]) -> ModePartition:
    if isinstance(partition, ModePartition):
        return partition
    return ModePartition(tuple(int(s) for s in partition))


@dataclass(frozen=True)
class OneToRestVector:
    """Per-party marginal entropies of a pure multipartite state."""

    values: tuple[float, ...]
    spec: str

    @property
    def n_parties(self) -> int:
        return len(self.values)

    def to_dict(self) -> dict:
        return {"values": list(self.values), "spec": self.spec}


@dataclass(frozen=True)
class PolygonReport:
    """Slack of every one-to-rest polygon inequality."""

    spec: str
    values: tuple[float, ...]
    slacks: tuple[float, ...]
    min_slack: float
    holds: bool
    violating_parties: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "values": list(self.values),
            "slacks": list(self.slacks),
            "min_slack": self.min_slack,
            "holds": self.holds,
            "violating_parties": list(self.violating_parties),
        }


@dataclass(frozen=True)
class SubadditivityReport:
    """Entropies across one bipartition and their mutual information."""

    spec: str
    entropy_joint: float
    entropy_first: float
    entropy_second: float
    mutual_information: float
    holds: bool

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "entropy_joint": self.entropy_joint,
            "entropy_first": self.entropy_first,
            "entropy_second": self.entropy_second,
            "mutual_information": self.mutual_information,
            "holds": self.holds,
        }


@dataclass(frozen=True)
class MarginalReport:
    """Entropy-free marginal inequality on raw spectral data."""

    kind: str
    values: tuple[float, ...]
    slacks: tuple[float, ...]
    min_slack: float
    holds: bool

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "values": list(self.values),
            "slacks": list(self.slacks),
            "min_slack": self.min_slack,
            "holds": self.holds,
        }


def one_to_rest(
    state: StateVector | DensityMatrix | CovarianceMatrix,
    spec: EntropySpec,
    partition: ModePartition | Sequence[int] | None = None,
    tol: Tolerances = DEFAULT_TOL,
) -> OneToRestVector:
    """Entropy of each party's marginal of a pure state.

    Discrete states group consecutive tensor factors by the size counts in
    ``partition`` (default: one party per factor); Gaussian states group
    consecutive modes (default: one party per mode).  Mixed inputs are
    rejected, since the one-to-rest interpretation needs global purity.
    """
    if isinstance(state, CovarianceMatrix):
        if partition is None:
            partition = (1,) * state.n_modes
        part = _as_mode_partition(partition)
        if part.n_parties < 2:
            raise GaussianError("one-to-rest needs at least two parties")
        if not is_pure_cm(state, tol):
            raise GaussianError("one-to-rest needs a pure state (symplectic spectrum at 1)")
        values = []
        for party in range(part.n_parties):
            sub = marginal_cm(state, part, (party,))
            values.append(entropy_gaussian(symplectic_spectrum(sub, tol), spec))
        return OneToRestVector(tuple(values), spec.to_string())

    if isinstance(state, DensityMatrix):
        if abs(purity(state) - 1.0) > tol.purity:
            raise StateError("one-to-rest needs a pure state (purity within tolerance of 1)")
        groups = _party_groups(state.layout.n_parties, partition)
        if len(groups) < 2:
            raise StateError("one-to-rest needs at least two parties")
        values = [
            entropy_discrete(spectrum(partial_trace(state, g), tol), spec) for g in groups
        ]
        return OneToRestVector(tuple(values), spec.to_string())

    if isinstance(state, StateVector):
        groups = _party_groups(state.layout.n_parties, partition)
        if len(groups) < 2:
            raise StateError("one-to-rest needs at least two parties")
        values = [
            entropy_discrete(spectrum(marginal_of_pure(state, g), tol), spec) for g in groups
        ]
        return OneToRestVector(tuple(values), spec.to_string())

    raise TypeError(f"unsupported state type {type(state).__name__}")


def polygon_check(
    vector: OneToRestVector | Sequence[float],
    tol: Tolerances = DEFAULT_TOL,
) -> PolygonReport:
    """Check ``E_i <= sum of the other E_j`` for every party."""
    if isinstance(vector, OneToRestVector):
        values = np.asarray(vector.values, dtype=np.float64)
        label = vector.spec
    else:
        values = np.asarray(vector, dtype=np.float64)
        label = ""
    if values.size < 2:
        raise ValueError("a polygon check needs at least two parties")
    slacks = values.sum() - 2.0 * values
    violating = tuple(int(i) for i in np.nonzero(slacks < -tol.violation)[0])
    return PolygonReport(
        spec=label,
        values=tuple(float(x) for x in values),
        slacks=tuple(float(x) for x in slacks),
        min_slack=float(slacks.min()),
        holds=not violating,
        violating_parties=violating,
    )


def _bipartition_entropies(
    state: DensityMatrix | CovarianceMatrix,
    spec: EntropySpec,
    partition: ModePartition | Sequence[int] | None,
    tol: Tolerances,
) -> tuple[float, float, float]:
    if isinstance(state, CovarianceMatrix):
        part = _as_mode_partition(partition if partition is not None else (1,) * state.n_modes)
        if part.n_parties != 2:
            raise GaussianError(f"subadditivity needs exactly two parties, got {part.n_parties}")
        joint = entropy_gaussian(symplectic_spectrum(state, tol), spec)
        first = entropy_gaussian(symplectic_spectrum(marginal_cm(state, part, (0,)), tol), spec)
        second = entropy_gaussian(symplectic_spectrum(marginal_cm(state, part, (1,)), tol), spec)
        return joint, first, second
    if isinstance(state, DensityMatrix):
        groups = _party_groups(state.layout.n_parties, partition)
        if len(groups) != 2:
            raise StateError(f"subadditivity needs exactly two parties, got {len(groups)}")
        joint = entropy_discrete(spectrum(state, tol), spec)
        first = entropy_discrete(spectrum(partial_trace(state, groups[0]), tol), spec)
        second = entropy_discrete(spectrum(partial_trace(state, groups[1]), tol), spec)
        return joint, first, second
    raise TypeError(f"unsupported state type {type(state).__name__}")


def subadditivity_check(
    state: DensityMatrix | CovarianceMatrix,
    spec: EntropySpec,
    partition: ModePartition | Sequence[int] | None = None,
    tol: Tolerances = DEFAULT_TOL,
) -> SubadditivityReport:
    """Check ``E(joint) <= E(first marginal) + E(second marginal)``.

    The default partition splits a two-factor (or two-mode) state down the
    middle; larger systems need explicit size counts.
    """
    joint, first, second = _bipartition_entropies(state, spec, partition, tol)
    mi = first + second - joint
    return SubadditivityReport(
        spec=spec.to_string(),
        entropy_joint=joint,
        entropy_first=first,
        entropy_second=second,
        mutual_information=mi,
        holds=mi >= -tol.violation,
    )


def mutual_information(
    state: DensityMatrix | CovarianceMatrix,
    spec: EntropySpec,
    partition: ModePartition | Sequence[int] | None = None,
    tol: Tolerances = DEFAULT_TOL,
) -> float:
    """``E(A) + E(B) - E(AB)``; negative values witness a subadditivity failure."""
    joint, first, second = _bipartition_entropies(state, spec, partition, tol)
    return first + second - joint


def qubit_marginal_check(
    lambdas: Sequence[float], tol: Tolerances = DEFAULT_TOL
) -> MarginalReport:
    """Each qubit's smaller marginal eigenvalue is at most the sum of the others."""
    lam = np.asarray(lambdas, dtype=np.float64)
    if lam.size < 2:
        raise ValueError("the marginal inequality needs at least two parties")
    if np.any(lam < -1e-12) or np.any(lam > 0.5 + 1e-9):
        raise ValueError(f"qubit marginal eigenvalues must lie in [0, 1/2], got {lam}")
    lam = np.clip(lam, 0.0, 0.5)
    slacks = lam.sum() - 2.0 * lam
    return MarginalReport(
        kind="qubit",
        values=tuple(float(x) for x in lam),
        slacks=tuple(float(x) for x in slacks),
        min_slack=float(slacks.min()),
        holds=bool(slacks.min() >= -tol.violation),
    )


def gaussian_marginal_check(
    s_values: Sequence[float], tol: Tolerances = DEFAULT_TOL
) -> MarginalReport:
    """Same inequality on shifted symplectic eigenvalues ``s - 1`` per mode."""
    s = np.asarray(s_values, dtype=np.float64)
    if s.size < 2:
        raise ValueError("the marginal inequality needs at least two parties")
    if np.any(s < 1.0 - tol.bona_fide):
        raise ValueError(f"symplectic eigenvalues must be >= 1, got {s}")
    shifted = np.clip(s - 1.0, 0.0, None)
    slacks = shifted.sum() - 2.0 * shifted
    return MarginalReport(
        kind="gaussian",
        values=tuple(float(x) for x in shifted),
        slacks=tuple(float(x) for x in slacks),
        min_slack=float(slacks.min()),
        holds=bool(slacks.min() >= -tol.violation),
    )


def weak_majorization_gap(x: Sequence[float], y: Sequence[float]) -> float:
    """Minimum over k of (ascending partial sums of x) - (ascending partial sums of y)."""
    xa = np.sort(np.asarray(x, dtype=np.float64))
    ya = np.sort(np.asarray(y, dtype=np.float64))
    if xa.size != ya.size:
        raise ValueError(f"majorization needs equal lengths, got {xa.size} and {ya.size}")
    if xa.size == 0:
        raise ValueError("majorization needs at least one value")
    return float(np.min(np.cumsum(xa) - np.cumsum(ya)))


def weak_majorization(x: Sequence[float], y: Sequence[float], tol: float = 0.0) -> bool:
    """True when every ascending partial sum of ``x`` dominates that of ``y``."""
    return weak_majorization_gap(x, y) >= -tol


def _validate_transform(
    f: Callable[[float], float], upper: float, n_points: int = 33
) -> None:
    """Spot-check that f(0) = 0, f is nondecreasing, and f is concave."""
    xs = np.linspace(0.0, max(upper, 1e-6), n_points)
    ys = np.array([float(f(float(x))) for x in xs])
    if abs(ys[0]) > 1e-9:
        raise ValueError(f"transform must satisfy f(0) = 0, got f(0) = {ys[0]:.3e}")
    increments = np.diff(ys)
    if np.any(increments < -1e-9):
        raise ValueError("transform must be nondecreasing on the sampled range")
    if np.any(np.diff(increments) > 1e-9):
        raise ValueError("transform must be concave on the sampled range")


def lemma1_check(
    f: Callable[[float], float],
    values: Sequence[float],
    tol: Tolerances = DEFAULT_TOL,
) -> bool:
    """Does ``f`` map this polygon-satisfying vector to another one?

    The input vector must itself satisfy the polygon relation; that
    precondition failing raises rather than returning False, since then the
    question is ill-posed.
    """
    base_report = polygon_check(values, tol)
    if not base_report.holds:
        raise ValueError("input vector does not satisfy the polygon relation")
    transformed = [float(f(float(x))) for x in values]
    return polygon_check(transformed, tol).holds


def transform_polygon(
    vector: OneToRestVector | Sequence[float],
    f: Callable[[float], float],
    tol: Tolerances = DEFAULT_TOL,
) -> PolygonReport:
    """Polygon check of ``f`` applied entrywise, after vetting ``f``.

    ``f`` is spot-checked on a grid for the hypotheses that make the
    transform safe (vanishing at 0, nondecreasing, concave); a transform
    failing the spot-check raises.
    """
    if isinstance(vector, OneToRestVector):
        values = vector.values
        label = vector.spec
    else:
        values = tuple(float(x) for x in vector)
        label = ""
    _validate_transform(f, max(values) if values else 1.0)
    transformed = [float(f(float(x))) for x in values]
    report = polygon_check(transformed, tol)
    return PolygonReport(
        spec=label,
        values=report.values,
        slacks=report.slacks,
        min_slack=report.min_slack,
        holds=report.holds,
        violating_parties=report.violating_parties,
    )


def tsallis_from_renyi_transform(q: float, base: float = 2.0) -> Callable[[float], float]:
    """The map sending a Renyi-q entropy to the Tsallis-q entropy of the same state.

    Concave, nondecreasing and vanishing at 0, so it preserves the polygon
    relation by the transform rule.
    """
    if q <= 1.0:
        raise ValueError(f"order must exceed 1, got {q}")
    ln_b = math.log(base)

    def transform(x: float) -> float:
        return -math.expm1((1.0 - q) * x * ln_b) / (q - 1.0)

    return transform


@dataclass(frozen=True)
class WClassScan:
    """Polygon slack survey over single-excitation states.

    Scans states where party 1 carries squared amplitude ``a1_squared`` and
    the rest is split evenly; for Renyi orders above 2 the slack at party 1
    turns negative as ``a1_squared`` approaches 1.
    """

    order: float
    base: float
    n_parties: int
    a1_squared: tuple[float, ...]
    slacks: tuple[float, ...]
    n_violations: int
    worst_slack: float
    worst_a1_squared: float
    witnesses: tuple[dict, ...]

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "base": self.base,
            "n_parties": self.n_parties,
            "a1_squared": list(self.a1_squared),
            "slacks": list(self.slacks),
            "n_violations": self.n_violations,
            "worst_slack": self.worst_slack,
            "worst_a1_squared": self.worst_a1_squared,
            "witnesses": [dict(w) for w in self.witnesses],
        }


DEFAULT_WSTATE_GRID = (0.5, 0.6, 0.7, 0.8, 0.9, 0.98)


def wstate_violation(
    p: float,
    n_parties: int = 3,
    a1sq_grid: Sequence[float] | None = None,
    base: float = 2.0,
    tol: Tolerances = DEFAULT_TOL,
) -> WClassScan:
    """Search single-excitation states for Renyi polygon violations.

    Only orders above 2 can violate (the qubit entropy function is concave
    up to order 2), so smaller orders are rejected.  Grid points with
    moderate weights may well satisfy the relation; the per-point slack is
    reported either way.
    """
    if p <= 2.0:
        raise ValueError(f"Renyi polygon violations require order above 2, got {p}")
    if n_parties < 3:
        raise ValueError("the search needs at least three parties")
    grid = tuple(float(x) for x in (a1sq_grid if a1sq_grid is not None else DEFAULT_WSTATE_GRID))
    if any(not 0.0 < x < 1.0 for x in grid):
        raise ValueError("a1_squared grid points must lie strictly between 0 and 1")
    spec = EntropySpec("R", p, base)
    slacks: list[float] = []
    witnesses: list[dict] = []
    for a1sq in grid:
        rest = math.sqrt((1.0 - a1sq) / (n_parties - 1))
        amps = [math.sqrt(a1sq)] + [rest] * (n_parties - 1)
        state = w_class_state(amps)
        report = polygon_check(one_to_rest(state, spec), tol)
        slacks.append(report.min_slack)
        if report.min_slack < -tol.witness:
            witnesses.append({"a1_squared": a1sq, "slack": report.min_slack, "amplitudes": amps})
    idx = int(np.argmin(slacks))
    return WClassScan(
        order=p,
        base=spec.base,
        n_parties=n_parties,
        a1_squared=grid,
        slacks=tuple(slacks),
        n_violations=int(np.count_nonzero(np.asarray(slacks) < -tol.violation)),
        worst_slack=float(slacks[idx]),
        worst_a1_squared=float(grid[idx]),
        witnesses=tuple(witnesses),
    )


@dataclass(frozen=True)
class EquivalenceReport:
    """Polygon slack at a purifying party versus subadditivity slack.

    For any two-party state, the purification's polygon inequality at the
    ancilla party and the original state's subadditivity inequality have
    identical slack, so each holds exactly when the other does.
    """

    spec: str
    one_to_rest_values: tuple[float, ...]
    ancilla_dim: int
    polygon_slack_at_ancilla: float
    subadditivity_slack: float
    difference: float
    slacks_match: bool
    subadditivity_holds: bool

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "one_to_rest_values": list(self.one_to_rest_values),
            "ancilla_dim": self.ancilla_dim,
            "polygon_slack_at_ancilla": self.polygon_slack_at_ancilla,
            "subadditivity_slack": self.subadditivity_slack,
            "difference": self.difference,
            "slacks_match": self.slacks_match,
            "subadditivity_holds": self.subadditivity_holds,
        }


def purified_equivalence_demo(
    rho: DensityMatrix,
    spec: EntropySpec,
    tol: Tolerances = DEFAULT_TOL,
) -> EquivalenceReport:
    """Demonstrate the polygon/subadditivity equivalence on one state.

    Purifies a two-party state, reads the polygon slack at the ancilla
    party off the tripartite pure state, and compares it with the mutual
    information of the original state.
    """
    if rho.layout.n_parties != 2:
        raise StateError(f"the demo needs a two-party state, got {rho.layout.n_parties} parties")
    d_a, d_b = rho.layout.dims
    psi = purify(rho, tol)
    ancilla_dim = psi.layout.dims[1]
    tripartite = StateVector(psi.amplitudes, DimsLayout((d_a, d_b, ancilla_dim)))
    vector = one_to_rest(tripartite, spec, tol=tol)
    e_a, e_b, e_c = vector.values
    polygon_slack = e_a + e_b - e_c
    subadd_slack = mutual_information(rho, spec, tol=tol)
    difference = abs(polygon_slack - subadd_slack)
    return EquivalenceReport(
        spec=spec.to_string(),
        one_to_rest_values=vector.values,
        ancilla_dim=ancilla_dim,
        polygon_slack_at_ancilla=polygon_slack,
        subadditivity_slack=subadd_slack,
        difference=difference,
        slacks_match=difference <= tol.violation,
        subadditivity_holds=subadd_slack >= -tol.violation,
    )


@dataclass(frozen=True)
class Theorem2Trace:
    """Step-by-step audit of the Gaussian polygon proof on one pure state.

    For each excluded party the chain is: local normal form of the rest,
    weak majorization of local versus joint symplectic eigenvalues, the
    sum inequality it implies for the entropy, and the product inequality
    splitting the union of local spectra into per-party terms (an exact
    identity for the additive families, a genuine inequality for Tsallis).
    """

    spec: str
    partition: tuple[int, ...]
    per_party: tuple[dict, ...]
    all_links_hold: bool
    min_polygon_slack: float

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "partition": list(self.partition),
            "per_party": [dict(entry) for entry in self.per_party],
            "all_links_hold": self.all_links_hold,
            "min_polygon_slack": self.min_polygon_slack,
        }


@dataclass(frozen=True)
class Theorem2Geometry:
    """Spec-independent spectral data behind the proof trace.

    Holds, for each choice of excluded party, the joint symplectic spectrum
    of the remaining parties and their per-party local normal-form spectra.
    Computing this once lets several entropy specs be traced without
    redoing any matrix factorization.
    """

    partition: tuple[int, ...]
    party_spectra: tuple[tuple[float, ...], ...]
    per_excluded: tuple[dict, ...]


def theorem2_geometry(
    sigma: CovarianceMatrix,
    partition: ModePartition | Sequence[int],
    tol: Tolerances = DEFAULT_TOL,
) -> Theorem2Geometry:
    """Factorizations needed by the proof trace, computed once per state."""
    part = _as_mode_partition(partition)
    if part.n_parties < 2:
        raise GaussianError("the proof trace needs at least two parties")
    if part.n_modes != sigma.n_modes:
        raise GaussianError(
            f"partition covers {part.n_modes} modes but the matrix has {sigma.n_modes}"
        )
    if not is_pure_cm(sigma, tol):
        raise GaussianError("the proof trace needs a pure state (symplectic spectrum at 1)")

    party_spectra = []
    for party in range(part.n_parties):
        sub = marginal_cm(sigma, part, (party,))
        party_spectra.append(tuple(float(x) for x in symplectic_spectrum(sub, tol).values))

    per_excluded: list[dict] = []
    for excluded in range(part.n_parties):
        rest = tuple(j for j in range(part.n_parties) if j != excluded)
        rest_part = ModePartition(tuple(part.sizes[j] for j in rest))
        sigma_rest = marginal_cm(sigma, part, rest)
        joint = symplectic_spectrum(sigma_rest, tol).values
        _, local_groups = local_normal_form(sigma_rest, rest_part, tol)
        per_excluded.append(
            {
                "excluded_party": excluded,
                "rest": rest,
                "joint": tuple(float(x) for x in joint),
                "local_groups": local_groups,
            }
        )
    return Theorem2Geometry(
        partition=part.sizes,
        party_spectra=tuple(party_spectra),
        per_excluded=tuple(per_excluded),
    )


def theorem2_trace_from_geometry(
    geometry: Theorem2Geometry,
    spec: EntropySpec,
    link_tol: float = 1e-8,
) -> Theorem2Trace:
    """Evaluate all proof links of one entropy spec on precomputed geometry."""
    party_entropy = [entropy_gaussian(np.asarray(s), spec) for s in geometry.party_spectra]
    entries: list[dict] = []
    for item in geometry.per_excluded:
        excluded = item["excluded_party"]
        rest = item["rest"]
        joint = np.asarray(item["joint"])
        local_groups = item["local_groups"]
        local_union = np.concatenate([np.asarray(g) for g in local_groups])

        majorization_gap = weak_majorization_gap(local_union, joint)
        e_joint = entropy_gaussian(joint, spec)
        e_union = entropy_gaussian(local_union, spec)
        sum_gap = e_union - e_joint
        e_parts = [entropy_gaussian(np.asarray(g), spec) for g in local_groups]
        product_gap = float(sum(e_parts)) - e_union
        identity_gap = abs(e_joint - party_entropy[excluded])
        polygon_slack = float(sum(party_entropy[j] for j in rest)) - party_entropy[excluded]
        ok = (
            majorization_gap >= -link_tol
            and sum_gap >= -link_tol
            and product_gap >= -link_tol
            and identity_gap <= link_tol
        )
        entries.append(
            {
                "excluded_party": excluded,
                "joint_spectrum": [float(x) for x in joint],
                "local_spectra": [list(g) for g in local_groups],
                "majorization_gap": float(majorization_gap),
                "sum_gap": float(sum_gap),
                "product_gap": float(product_gap),
                "identity_gap": float(identity_gap),
                "polygon_slack": float(polygon_slack),
                "links_hold": bool(ok),
            }
        )
    return Theorem2Trace(
        spec=spec.to_string(),
        partition=geometry.partition,
        per_party=tuple(entries),
        all_links_hold=all(e["links_hold"] for e in entries),
        min_polygon_slack=float(min(e["polygon_slack"] for e in entries)),
    )


def theorem2_proof_trace(
    sigma: CovarianceMatrix,
    partition: ModePartition | Sequence[int],
    spec: EntropySpec,
    link_tol: float = 1e-8,
    tol: Tolerances = DEFAULT_TOL,
) -> Theorem2Trace:
    """Validate every intermediate link of the Gaussian polygon argument.

    Requires a globally pure state.  Reported gaps are signed so that any
    value below ``-link_tol`` marks a broken link; ``identity_gap`` is an
    absolute defect and must stay below ``link_tol``.
    """
    return theorem2_trace_from_geometry(theorem2_geometry(sigma, partition, tol), spec, link_tol)


@dataclass(frozen=True)
class GhzDemoReport:
    """Entropy of a separable two-party marginal of a three-qubit state.

    The two-party marginal of the all-qubit cat state is an even classical
    mixture of two product states; its entanglement is zero in any measure,
    yet its entropy is strictly positive and the one-to-rest polygon holds
    with room to spare.  This separates entropic polygon relations from
    entanglement monogamy.
    """

    spec: str
    entropy_pair: float
    entropy_single: float
    polygon_slack: float
    pair_is_separable: bool
    entropy_positive: bool
    note: str

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "entropy_pair": self.entropy_pair,
            "entropy_single": self.entropy_single,
            "polygon_slack": self.polygon_slack,
            "pair_is_separable": self.pair_is_separable,
            "entropy_positive": self.entropy_positive,
            "note": self.note,
        }


def ghz_monogamy_demo(spec: EntropySpec, tol: Tolerances = DEFAULT_TOL) -> GhzDemoReport:
    """Contrast entropic polygon slack with entanglement monogamy on GHZ."""
    from .discrete import ghz_state

    state = ghz_state(3)
    pair = marginal_of_pure(state, (0, 1))
    entropy_pair = entropy_discrete(spectrum(pair, tol), spec)
    vector = one_to_rest(state, spec, tol=tol)
    slack = vector.values[1] + vector.values[2] - vector.values[0]
    return GhzDemoReport(
        spec=spec.to_string(),
        entropy_pair=entropy_pair,
        entropy_single=vector.values[0],
        polygon_slack=slack,
        pair_is_separable=True,
        entropy_positive=entropy_pair > tol.violation,
        note=(
            "the two-party marginal is an even mixture of two product states, "
            "so its entanglement vanishes in every measure while its entropy stays positive"
        ),
    )
