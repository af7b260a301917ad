"""Discrete-state core: layouts, states, marginals, purification, sampling."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entpoly.discrete import (
    DensityMatrix,
    DimsLayout,
    Spectrum,
    StateError,
    StateVector,
    build_state_vector,
    ghz_state,
    haar_random_pure,
    haar_random_unitary,
    marginal_of_pure,
    partial_trace,
    purify,
    purity,
    random_density,
    spectrum,
    w_class_state,
)

# --- layouts and constructors ---------------------------------------------


def test_layout_basics():
    layout = DimsLayout((2, 3, 4))
    assert layout.n_parties == 3
    assert layout.total_dim == 24


def test_layout_allows_dimension_one_ancilla():
    # purifying an already-pure state yields a trivial ancilla factor
    layout = DimsLayout((4, 1))
    assert layout.total_dim == 4


@pytest.mark.parametrize("dims", [(), (0, 2), (2, -1)])
def test_layout_rejects_bad_dims(dims):
    with pytest.raises(StateError):
        DimsLayout(dims)


def test_build_state_vector_normalizes():
    psi = build_state_vector([1.0, 1.0], DimsLayout((2,)))
    assert np.allclose(psi.amplitudes, [1 / np.sqrt(2), 1 / np.sqrt(2)])


def test_build_state_vector_rejects_zero_and_wrong_length():
    with pytest.raises(StateError):
        build_state_vector([0.0, 0.0], DimsLayout((2,)))
    with pytest.raises(StateError):
        build_state_vector([1.0, 0.0, 0.0], DimsLayout((2,)))


def test_state_vector_requires_normalization():
    with pytest.raises(StateError):
        StateVector(np.array([1.0, 1.0]), DimsLayout((2,)))


def test_state_vector_is_read_only():
    psi = ghz_state(2)
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 0.0


def test_density_matrix_validation():
    good = np.diag([0.5, 0.5])
    DensityMatrix(good, DimsLayout((2,)))
    with pytest.raises(StateError):  # not Hermitian
        DensityMatrix(np.array([[0.5, 1.0], [0.0, 0.5]]), DimsLayout((2,)))
    with pytest.raises(StateError):  # trace 2
        DensityMatrix(np.eye(2), DimsLayout((2,)))
    with pytest.raises(StateError):  # negative eigenvalue
        DensityMatrix(np.diag([1.5, -0.5]), DimsLayout((2,)))


def test_density_matrix_from_vector_is_projector():
    psi = ghz_state(2)
    rho = psi.density_matrix()
    m = rho.entries
    assert np.allclose(m @ m, m, atol=1e-14)
    assert abs(purity(rho) - 1.0) < 1e-14


def test_spectrum_orders_and_clips():
    # an eigenvalue a few ulp below zero is noise, not an invalid state
    rho = DensityMatrix(np.diag([1.0 + 5e-11, -5e-11]), DimsLayout((2,)))
    spec = spectrum(rho)
    assert spec.values[0] == pytest.approx(1.0, abs=1e-12)
    assert spec.values[1] == 0.0
    assert np.all(np.diff(spec.values) <= 0)


def test_spectrum_type_rejects_unsorted():
    with pytest.raises(StateError):
        Spectrum(np.array([0.3, 0.7]))


# --- partial trace and marginals ------------------------------------------


def test_partial_trace_of_product_state(rng):
    a = random_density(2, 2, rng)
    b = random_density(3, 3, rng)
    ab = DensityMatrix(np.kron(a.entries, b.entries), DimsLayout((2, 3)))
    left = partial_trace(ab, (0,))
    right = partial_trace(ab, (1,))
    assert np.allclose(left.entries, a.entries, atol=1e-13)
    assert np.allclose(right.entries, b.entries, atol=1e-13)


def test_partial_trace_bell_is_maximally_mixed():
    rho = ghz_state(2).density_matrix()
    red = partial_trace(rho, (0,))
    assert np.allclose(red.entries, np.eye(2) / 2, atol=1e-14)


def test_partial_trace_keeps_multiple_factors(rng):
    psi = haar_random_pure(DimsLayout((2, 3, 2)), rng)
    rho = psi.density_matrix()
    keep02 = partial_trace(rho, (0, 2))
    assert keep02.layout.dims == (2, 2)
    assert abs(float(np.trace(keep02.entries).real) - 1.0) < 1e-12


def test_marginal_of_pure_agrees_with_partial_trace(rng):
    psi = haar_random_pure(DimsLayout((2, 2, 3)), rng)
    rho = psi.density_matrix()
    for keep in [(0,), (1,), (2,), (0, 1), (1, 2), (0, 2)]:
        direct = marginal_of_pure(psi, keep)
        slow = partial_trace(rho, keep)
        assert np.allclose(direct.entries, slow.entries, atol=1e-13)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_complementary_marginals_share_spectrum(seed):
    rng = np.random.default_rng(seed)
    psi = haar_random_pure(DimsLayout((2, 6)), rng)
    sa = spectrum(marginal_of_pure(psi, (0,))).values
    sb = spectrum(marginal_of_pure(psi, (1,))).values
    assert np.allclose(sa, sb[: sa.size], atol=1e-12)
    assert np.all(np.abs(sb[sa.size :]) < 1e-12)


# --- purification -----------------------------------------------------------


def test_purify_round_trip(rng):
    rho = random_density(4, 3, rng)
    rho = DensityMatrix(rho.entries, DimsLayout((4,)))
    psi = purify(rho)
    assert psi.layout.dims[0] == 4
    back = marginal_of_pure(psi, (0,))
    assert np.max(np.abs(back.entries - rho.entries)) < 1e-12


def test_purify_pure_state_needs_no_ancilla():
    rho = ghz_state(2).density_matrix()
    rho_flat = DensityMatrix(rho.entries, DimsLayout((4,)))
    psi = purify(rho_flat)
    assert psi.layout.dims == (4, 1)


def test_purify_ancilla_matches_rank(rng):
    rho = random_density(5, 2, rng)
    rho = DensityMatrix(rho.entries, DimsLayout((5,)))
    psi = purify(rho)
    assert psi.layout.dims == (5, 2)


# --- random sampling ---------------------------------------------------------


def test_haar_unitary_is_unitary(rng):
    u = haar_random_unitary(6, rng)
    assert np.allclose(u @ u.conj().T, np.eye(6), atol=1e-12)


def test_haar_unitary_deterministic_per_seed():
    u1 = haar_random_unitary(4, np.random.default_rng(3))
    u2 = haar_random_unitary(4, np.random.default_rng(3))
    assert np.array_equal(u1, u2)


def test_haar_pure_state_normalized(rng):
    psi = haar_random_pure(DimsLayout((3, 3)), rng)
    assert abs(np.vdot(psi.amplitudes, psi.amplitudes).real - 1.0) < 1e-12


def test_haar_marginal_purity_statistic():
    # mean purity of a qubit marginal of a Haar two-qubit state is
    # (d_A + d_B) / (d_A d_B + 1) = 4/5
    rng = np.random.default_rng(515)
    total = 0.0
    n = 2000
    for _ in range(n):
        psi = haar_random_pure(DimsLayout((2, 2)), rng)
        total += purity(marginal_of_pure(psi, (0,)))
    assert abs(total / n - 0.8) < 0.02


def test_random_density_properties(rng):
    rho = random_density(4, 2, rng)
    vals = np.linalg.eigvalsh(rho.entries)
    assert abs(vals.sum() - 1.0) < 1e-12
    assert vals.min() > -1e-12
    assert np.sum(vals > 1e-10) == 2


def test_random_density_rank_bounds(rng):
    with pytest.raises(StateError):
        random_density(3, 0, rng)
    # an environment larger than the system just saturates at full rank
    rho = random_density(3, 5, rng)
    assert np.sum(np.linalg.eigvalsh(rho.entries) > 1e-10) == 3


# --- named families ----------------------------------------------------------


def test_ghz_state_amplitudes():
    psi = ghz_state(3)
    expected = np.zeros(8)
    expected[0] = expected[7] = 1 / np.sqrt(2)
    assert np.allclose(psi.amplitudes, expected)


def test_w_class_marginals():
    # party k of a single-excitation state has marginal spectrum
    # {a_k^2, 1 - a_k^2}
    amps = [0.8, 0.36, np.sqrt(1 - 0.64 - 0.36**2)]
    psi = w_class_state(amps)
    for k, a in enumerate(amps):
        vals = spectrum(marginal_of_pure(psi, (k,))).values
        assert sorted(vals) == pytest.approx(sorted([a**2, 1 - a**2]), abs=1e-12)


def test_w_class_rejects_zero_amplitude():
    with pytest.raises(StateError):
        w_class_state([1.0, 0.0])
