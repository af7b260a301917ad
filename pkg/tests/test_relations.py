"""Inequality checks: polygon, subadditivity, marginals, proof-chain audits."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entpoly.campaigns import diagonal_counterexample
from entpoly.discrete import (
    DensityMatrix,
    DimsLayout,
    StateVector,
    build_state_vector,
    ghz_state,
    haar_random_pure,
    random_density,
    w_class_state,
)
from entpoly.entropy import EntropySpec, entropy_discrete
from entpoly.gaussian import (
    GaussianError,
    ModePartition,
    random_cm,
    two_mode_squeezed,
)
from entpoly.relations import (
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
    transform_polygon,
    tsallis_from_renyi_transform,
    weak_majorization,
    weak_majorization_gap,
    wstate_violation,
)

S2 = EntropySpec.from_string("S")
R2 = EntropySpec.from_string("R:p=2")
R3 = EntropySpec.from_string("R:p=3")
T2 = EntropySpec.from_string("T:q=2")

# --- one-to-rest entropy vectors -----------------------------------------------


def test_one_to_rest_bell_and_ghz():
    assert one_to_rest(ghz_state(2), S2).values == pytest.approx((1.0, 1.0))
    assert one_to_rest(ghz_state(3), S2).values == pytest.approx((1.0, 1.0, 1.0))


def test_one_to_rest_product_state():
    psi = build_state_vector([1, 0, 0, 0], DimsLayout((2, 2)))
    assert one_to_rest(psi, S2).values == pytest.approx((0.0, 0.0), abs=1e-12)


def test_one_to_rest_groups_parties():
    # grouping (2,1) on three qubits makes a two-party split
    vec = one_to_rest(ghz_state(3), S2, partition=(2, 1))
    assert len(vec.values) == 2
    assert vec.values == pytest.approx((1.0, 1.0), abs=1e-12)


def test_one_to_rest_gaussian_tmsv():
    cm = two_mode_squeezed(0.5)
    vec = one_to_rest(cm, S2, partition=(1, 1))
    s = np.cosh(1.0)
    a, b = (s + 1) / 2, (s - 1) / 2
    e = a * np.log2(a) - b * np.log2(b)
    assert vec.values == pytest.approx((e, e), abs=1e-12)


def test_one_to_rest_requires_purity(rng):
    mixed = random_cm(2, rng, kind="mixed")
    with pytest.raises(GaussianError):
        one_to_rest(mixed, S2)
    rho = random_density(4, 3, rng)
    with pytest.raises(Exception):
        one_to_rest(DensityMatrix(rho.entries, DimsLayout((2, 2))), S2)


# --- polygon --------------------------------------------------------------------


def test_polygon_check_on_raw_values():
    rep = polygon_check([3.0, 1.0, 1.0])
    assert rep.slacks == pytest.approx((-1.0, 3.0, 3.0))
    assert not rep.holds
    assert rep.violating_parties == (0,)
    assert rep.min_slack == -1.0


def test_polygon_check_holds_on_ghz():
    rep = polygon_check(one_to_rest(ghz_state(4), R2))
    assert rep.holds and rep.min_slack == pytest.approx(2.0)


# --- subadditivity ----------------------------------------------------------------


def test_subadditivity_product_state_mutual_information(rng):
    a = random_density(2, 2, rng)
    b = random_density(2, 2, rng)
    rho = DensityMatrix(np.kron(a.entries, b.entries), DimsLayout((2, 2)))
    # the additive families see no correlations in a product state
    for spec in (S2, R2):
        rep = subadditivity_check(rho, spec)
        assert rep.holds
        assert rep.mutual_information == pytest.approx(0.0, abs=1e-12)
    # Tsallis is non-additive: a product state keeps the (q-1) T_A T_B term
    rep = subadditivity_check(rho, T2)
    assert rep.mutual_information == pytest.approx(
        rep.entropy_first * rep.entropy_second, abs=1e-12
    )
    assert rep.holds


def test_subadditivity_bell_mutual_information():
    rho = ghz_state(2).density_matrix()
    rep = subadditivity_check(rho, S2)
    assert rep.mutual_information == pytest.approx(2.0, abs=1e-12)
    assert mutual_information(rho, S2) == pytest.approx(2.0, abs=1e-12)


def test_subadditivity_gaussian_tmsv():
    cm = two_mode_squeezed(0.5)
    rep = subadditivity_check(cm, S2)
    s = np.cosh(1.0)
    a, b = (s + 1) / 2, (s - 1) / 2
    e = a * np.log2(a) - b * np.log2(b)
    assert rep.mutual_information == pytest.approx(2 * e, abs=1e-12)
    assert rep.holds


def test_renyi2_counterexample_mutual_information():
    # diagonal weights (0.5, 0.3, 0.2, 0): joint purity 0.38, marginal
    # purities 0.68 * 0.58 = 0.3944, so I_2 = log2(0.38/0.3944) < 0
    rho = diagonal_counterexample()
    rep = subadditivity_check(rho, R2)
    expected = np.log2(0.38 / 0.3944)
    assert rep.mutual_information == pytest.approx(expected, abs=1e-12)
    assert not rep.holds


def test_renyi2_counterexample_qudit_embedding():
    rho = diagonal_counterexample(qudit=True)
    rep = subadditivity_check(rho, R2)
    assert rep.mutual_information == pytest.approx(np.log2(0.38 / 0.3944), abs=1e-12)
    assert not rep.holds


# --- marginal inequalities ----------------------------------------------------------


def test_qubit_marginal_check_boundary():
    rep = qubit_marginal_check([0.4, 0.3, 0.1])
    assert rep.holds
    assert rep.min_slack == pytest.approx(0.0, abs=1e-12)
    rep = qubit_marginal_check([0.5, 0.1, 0.1])
    assert not rep.holds
    assert rep.min_slack == pytest.approx(-0.3, abs=1e-12)


def test_qubit_marginal_check_rejects_large_values():
    with pytest.raises(ValueError):
        qubit_marginal_check([0.7, 0.1, 0.1])


def test_gaussian_marginal_check_shifts_by_vacuum():
    rep = gaussian_marginal_check([3.0, 1.5, 1.2])
    # shifted values (2, 0.5, 0.2): the first exceeds the sum of the rest
    assert rep.min_slack == pytest.approx(-1.3, abs=1e-12)
    assert not rep.holds
    s = np.cosh(1.0)
    rep = gaussian_marginal_check([s, s])
    assert rep.min_slack == pytest.approx(0.0, abs=1e-12)
    assert rep.holds


def test_gaussian_marginal_check_rejects_below_vacuum():
    with pytest.raises(ValueError):
        gaussian_marginal_check([0.9, 1.5])


def test_weak_majorization_partial_sums():
    # ascending partial sums of x must dominate those of y
    assert weak_majorization([0.3, 0.5], [0.2, 0.4])
    assert not weak_majorization([0.1, 0.9], [0.2, 0.4])
    assert weak_majorization_gap([1.0, 2.0], [1.0, 2.0]) == pytest.approx(0.0)
    with pytest.raises(ValueError):
        weak_majorization_gap([1.0], [1.0, 2.0])


# --- monotone transforms --------------------------------------------------------------


def test_lemma1_transports_polygon():
    values = (1.0, 1.0, 1.0)
    assert lemma1_check(np.sqrt, values)


def test_lemma1_detects_broken_image():
    # cubing blows up the dominant entry of a boundary vector
    assert not lemma1_check(lambda x: x**3, (2.0, 1.0, 1.0))


def test_lemma1_requires_polygon_input():
    with pytest.raises(ValueError):
        lemma1_check(np.sqrt, (3.0, 1.0, 1.0))


def test_transform_polygon_applies_function():
    rep = transform_polygon((1.0, 1.0, 1.0), lambda x: 2 * x)
    assert rep.slacks == pytest.approx((2.0, 2.0, 2.0))


def test_transform_polygon_vets_the_transform():
    with pytest.raises(ValueError):
        transform_polygon((2.0, 1.0, 1.0), lambda x: x * x)
    with pytest.raises(ValueError):
        transform_polygon((2.0, 1.0, 1.0), lambda x: x + 1.0)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_tsallis_polygon_follows_from_renyi_by_transform(seed):
    # h(y) = (1 - b^((1-q) y)) / (q - 1) maps Renyi to Tsallis pointwise,
    # and is monotone-concave with h(0) = 0, so it transports the polygon
    rng = np.random.default_rng(seed)
    psi = haar_random_pure(DimsLayout((2, 2, 2)), rng)
    q = 2.0
    renyi_vec = one_to_rest(psi, EntropySpec(family="R", order=q, base=2.0))
    h = tsallis_from_renyi_transform(q, base=2.0)
    transformed = transform_polygon(renyi_vec, h)
    direct = one_to_rest(psi, EntropySpec(family="T", order=q, base=2.0))
    assert np.allclose(transformed.values, direct.values, atol=1e-10)
    assert transformed.holds


# --- W-class scan -------------------------------------------------------------------


def test_wstate_scan_matches_closed_form():
    scan = wstate_violation(3.0)
    # party 1 marginal is {a1^2, 1-a1^2}; each other party {a_k^2, 1-a_k^2}
    def slack(a1sq: float, n: int = 3) -> float:
        rest = (1 - a1sq) / (n - 1)
        e1 = entropy_discrete([max(a1sq, 1 - a1sq), min(a1sq, 1 - a1sq)], R3)
        ek = entropy_discrete([1 - rest, rest], R3)
        return (n - 1) * ek - e1

    for a1sq, got in zip(scan.a1_squared, scan.slacks):
        assert got == pytest.approx(slack(a1sq), abs=1e-12)
    assert scan.worst_a1_squared == 0.7
    assert scan.worst_slack == pytest.approx(-0.0217124538828406, abs=1e-12)
    assert scan.n_violations == 4
    assert all(w["slack"] < -1e-6 for w in scan.witnesses)


def test_wstate_boundary_point_is_shallow():
    scan = wstate_violation(3.0, a1sq_grid=(0.98,))
    assert scan.worst_slack == pytest.approx(-2.1616493262029135e-4, abs=1e-12)


def test_wstate_scan_rejects_low_orders():
    with pytest.raises(ValueError):
        wstate_violation(2.0)


def test_wstate_four_parties_still_violates():
    scan = wstate_violation(3.0, n_parties=4, a1sq_grid=(0.9, 0.98))
    assert scan.n_violations > 0


def test_wstate_witness_state_reproduces_slack():
    scan = wstate_violation(3.0)
    w = scan.witnesses[0]
    psi = w_class_state(w["amplitudes"])
    rep = polygon_check(one_to_rest(psi, R3))
    assert rep.min_slack == pytest.approx(w["slack"], abs=1e-12)


# --- purified equivalence --------------------------------------------------------------


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_polygon_at_ancilla_equals_subadditivity_slack(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(4, 3, rng)
    rho = DensityMatrix(rho.entries, DimsLayout((2, 2)))
    rep = purified_equivalence_demo(rho, R2)
    assert rep.slacks_match
    assert abs(rep.polygon_slack_at_ancilla - rep.subadditivity_slack) < 1e-9


def test_equivalence_on_counterexample_is_negative_on_both_sides():
    rep = purified_equivalence_demo(diagonal_counterexample(), R2)
    expected = np.log2(0.38 / 0.3944)
    assert rep.subadditivity_slack == pytest.approx(expected, abs=1e-12)
    assert rep.polygon_slack_at_ancilla == pytest.approx(expected, abs=1e-9)
    assert not rep.subadditivity_holds


# --- Gaussian proof-chain audit -----------------------------------------------------------


@pytest.mark.parametrize("partition", [(1, 1, 1), (2, 1, 1), (2, 2, 1)])
@pytest.mark.parametrize("text", ["S", "R:p=1.5", "R:p=3", "T:q=3"])
def test_proof_trace_links_hold_on_random_pure_states(partition, text, rng):
    spec = EntropySpec.from_string(text)
    cm = random_cm(sum(partition), rng, kind="pure")
    trace = theorem2_proof_trace(cm, ModePartition(partition), spec)
    assert trace.all_links_hold
    assert trace.min_polygon_slack >= -1e-9
    for entry in trace.per_party:
        assert entry["majorization_gap"] >= -1e-8
        assert entry["sum_gap"] >= -1e-8
        assert entry["product_gap"] >= -1e-8
        assert entry["identity_gap"] <= 1e-8


def test_proof_trace_product_link_is_identity_for_additive_families(rng):
    cm = random_cm(3, rng, kind="pure")
    for text in ("S", "R:p=2"):
        trace = theorem2_proof_trace(cm, ModePartition((1, 1, 1)), EntropySpec.from_string(text))
        for entry in trace.per_party:
            assert abs(entry["product_gap"]) < 1e-10


def test_proof_trace_rejects_mixed_states(rng):
    cm = random_cm(3, rng, kind="mixed")
    with pytest.raises(GaussianError):
        theorem2_proof_trace(cm, ModePartition((1, 1, 1)), S2)


def test_proof_trace_rejects_partition_mismatch(rng):
    cm = random_cm(3, rng, kind="pure")
    with pytest.raises(GaussianError):
        theorem2_proof_trace(cm, ModePartition((1, 1)), S2)


# --- separability demo ------------------------------------------------------------------


def test_ghz_demo_entropy_without_entanglement():
    rep = ghz_monogamy_demo(S2)
    assert rep.pair_is_separable
    assert rep.entropy_pair == pytest.approx(1.0, abs=1e-12)
    assert rep.polygon_slack == pytest.approx(1.0, abs=1e-12)
    assert rep.entropy_positive
    rep = ghz_monogamy_demo(T2)
    assert rep.entropy_pair == pytest.approx(0.5, abs=1e-12)
