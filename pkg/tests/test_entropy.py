"""Entropy evaluation: specs, discrete/Gaussian values, derivatives, scans."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entpoly.discrete import DimsLayout, ghz_state, random_density, spectrum
from entpoly.entropy import (
    EntropySpec,
    derivative,
    entropy_discrete,
    entropy_gaussian,
    entropy_of_state,
    g_factor,
    mode_entropy_fn,
    monotonicity_scan,
    qubit_entropy_fn,
    tsallis_from_renyi_value,
)
from entpoly.gaussian import random_cm, symplectic_spectrum, two_mode_squeezed

S2 = EntropySpec.from_string("S")
SE = EntropySpec.from_string("S:b=e")

# --- spec parsing -----------------------------------------------------------


def test_spec_parsing_round_trips():
    for text, canon in [
        ("S", "S"),
        ("R:p=2", "R:p=2"),
        ("R:p=2.0", "R:p=2"),
        ("T:q=1.5", "T:q=1.5"),
        ("R:p=2.5:b=e", "R:p=2.5:b=e"),
        ("S:b=10", "S:b=10"),
    ]:
        spec = EntropySpec.from_string(text)
        assert spec.to_string() == canon
        assert EntropySpec.from_string(canon).to_string() == canon


def test_spec_rejects_bad_input():
    for text in ["R:p=1", "R:p=0.5", "T:q=1", "X", "R", "T:p=2", "S:b=0", "S:b=1", "R:p=nan"]:
        with pytest.raises(ValueError):
            EntropySpec.from_string(text)


def test_spec_tsallis_drops_base():
    # Tsallis values are base independent, so the parsed form never records one
    assert EntropySpec.from_string("T:q=2:b=e").to_string() == "T:q=2"


# --- discrete values -----------------------------------------------------------


def test_uniform_spectrum_all_families():
    d = 8
    flat = np.full(d, 1.0 / d)
    assert entropy_discrete(flat, S2) == pytest.approx(3.0, abs=1e-12)
    for p in (1.5, 2.0, 3.0):
        spec = EntropySpec.from_string(f"R:p={p}")
        assert entropy_discrete(flat, spec) == pytest.approx(3.0, abs=1e-12)
    q = 2.0
    spec = EntropySpec.from_string(f"T:q={q}")
    assert entropy_discrete(flat, spec) == pytest.approx(
        (1 - d ** (1 - q)) / (q - 1), abs=1e-12
    )


def test_pure_spectrum_gives_zero():
    for text in ["S", "R:p=2", "T:q=3"]:
        value = entropy_discrete([1.0, 0.0, 0.0], EntropySpec.from_string(text))
        assert value == 0.0


def test_half_half_is_one_bit():
    assert entropy_discrete([0.5, 0.5], S2) == pytest.approx(1.0, abs=1e-14)
    assert entropy_discrete([0.5, 0.5], EntropySpec.from_string("R:p=2")) == pytest.approx(
        1.0, abs=1e-14
    )


def test_base_conversion():
    lam = [0.7, 0.2, 0.1]
    assert entropy_discrete(lam, SE) == pytest.approx(
        np.log(2.0) * entropy_discrete(lam, S2), abs=1e-13
    )
    r2 = EntropySpec.from_string("R:p=2")
    r2e = EntropySpec.from_string("R:p=2:b=e")
    assert entropy_discrete(lam, r2e) == pytest.approx(
        np.log(2.0) * entropy_discrete(lam, r2), abs=1e-13
    )


def test_renyi_and_tsallis_order_one_limits(rng):
    eps = 1e-4
    for _ in range(20):
        lam = spectrum(random_density(5, 5, rng)).values
        s_bits = entropy_discrete(lam, S2)
        s_nats = entropy_discrete(lam, SE)
        r = entropy_discrete(lam, EntropySpec.from_string(f"R:p={1 + eps}"))
        t = entropy_discrete(lam, EntropySpec.from_string(f"T:q={1 + eps}"))
        assert abs(r - s_bits) < 1e-3
        assert abs(t - s_nats) < 1e-3


# --- Gaussian values --------------------------------------------------------------


def test_vacuum_entropy_is_zero():
    for text in ["S", "R:p=1.5", "T:q=3"]:
        assert entropy_gaussian([1.0, 1.0], EntropySpec.from_string(text)) == 0.0


def test_g_factor_identities():
    assert g_factor(1.0, 2.5) == pytest.approx(1.0, abs=1e-15)
    assert g_factor(3.0, 2.0) == pytest.approx(1.0 / 3.0, abs=1e-15)
    for s in np.linspace(1.0, 50.0, 25):
        assert g_factor(s, 2.0) == pytest.approx(1.0 / s, abs=1e-12)


def test_thermal_mode_against_photon_number_series():
    # s = 3 means mean photon number 1: eigenvalues (1/2)^(k+1), so the
    # von Neumann entropy is exactly 2 bits and tr rho^p = 1/(2^p - 1)
    s = 3.0
    assert entropy_gaussian([s], S2) == pytest.approx(2.0, abs=1e-12)
    for p in (1.5, 2.0, 3.0):
        spec = EntropySpec.from_string(f"R:p={p}")
        expected = np.log2(1.0 / (2.0**p - 1.0)) / (1.0 - p)
        assert entropy_gaussian([s], spec) == pytest.approx(expected, abs=1e-12)
    lam = 0.5 ** np.arange(1, 200)
    lam = lam / lam.sum()
    for text in ["S", "R:p=1.5", "R:p=3", "T:q=2"]:
        spec = EntropySpec.from_string(text)
        assert entropy_gaussian([s], spec) == pytest.approx(
            entropy_discrete(lam, spec), abs=1e-10
        )


def test_gaussian_entropy_is_sum_over_modes(rng):
    vals = [1.3, 2.2, 4.0]
    for text in ["S", "R:p=2", "S:b=e"]:
        spec = EntropySpec.from_string(text)
        total = entropy_gaussian(vals, spec)
        parts = sum(entropy_gaussian([v], spec) for v in vals)
        assert total == pytest.approx(parts, abs=1e-12)


def test_tmsv_marginal_entropy_closed_form():
    cm = two_mode_squeezed(0.5)
    s = np.cosh(1.0)
    a, b = (s + 1) / 2, (s - 1) / 2
    expected = a * np.log2(a) - b * np.log2(b)
    red = symplectic_spectrum(cm).values  # joint is pure
    assert entropy_gaussian(red, S2) == pytest.approx(0.0, abs=1e-9)
    assert entropy_gaussian([s], S2) == pytest.approx(expected, abs=1e-12)


def test_entropy_of_state_dispatch(rng):
    psi = ghz_state(2)
    assert entropy_of_state(psi, S2) == 0.0
    rho = random_density(3, 3, rng)
    assert entropy_of_state(rho, S2) == pytest.approx(
        entropy_discrete(spectrum(rho), S2), abs=1e-14
    )
    cm = random_cm(2, rng, kind="mixed")
    assert entropy_of_state(cm, S2) == pytest.approx(
        entropy_gaussian(symplectic_spectrum(cm), S2), abs=1e-14
    )


def test_pointwise_helpers_match_vector_forms():
    for text in ["S", "R:p=2.5", "T:q=1.5"]:
        spec = EntropySpec.from_string(text)
        assert qubit_entropy_fn(0.3, spec) == pytest.approx(
            entropy_discrete([0.7, 0.3], spec), abs=1e-14
        )
        assert mode_entropy_fn(2.4, spec) == pytest.approx(
            entropy_gaussian([2.4], spec), abs=1e-14
        )


# --- derivatives ------------------------------------------------------------------


def _central(f, x, h):
    return (f(x + h) - f(x - h)) / (2 * h)


@pytest.mark.parametrize("text", ["R:p=1.5", "R:p=3", "T:q=1.5", "T:q=3"])
def test_qubit_derivatives_match_finite_differences(text):
    spec = EntropySpec.from_string(text)
    h = 1e-5
    for lam in np.linspace(0.05, 0.45, 9):
        fd1 = _central(lambda x: qubit_entropy_fn(x, spec), lam, h)
        d1 = derivative("qubit_f", spec, 1, lam)
        assert abs(d1 - fd1) <= 1e-6 * max(1.0, abs(fd1))
        fd2 = _central(lambda x: derivative("qubit_f", spec, 1, x), lam, h)
        d2 = derivative("qubit_f", spec, 2, lam)
        assert abs(d2 - fd2) <= 1e-6 * max(1.0, abs(fd2))


@pytest.mark.parametrize("text", ["R:p=1.5", "R:p=3", "T:q=1.5", "T:q=3"])
def test_mode_derivatives_match_finite_differences(text):
    spec = EntropySpec.from_string(text)
    h = 1e-5
    for s in np.linspace(1.2, 6.0, 9):
        fd1 = _central(lambda x: mode_entropy_fn(x, spec), s, h)
        d1 = derivative("mode_g", spec, 1, s)
        assert abs(d1 - fd1) <= 1e-6 * max(1.0, abs(fd1))
        fd2 = _central(lambda x: derivative("mode_g", spec, 1, x), s, h)
        d2 = derivative("mode_g", spec, 2, s)
        assert abs(d2 - fd2) <= 1e-6 * max(1.0, abs(fd2))


def test_von_neumann_qubit_second_derivative_closed_form():
    # f(l) = -l log2 l - (1-l) log2(1-l) has f'' = -1 / (l (1-l) ln 2)
    for lam in (0.1, 0.25, 0.5, 0.8):
        expected = -1.0 / (lam * (1 - lam) * np.log(2.0))
        assert derivative("qubit_f", S2, 2, lam) == pytest.approx(expected, rel=1e-9)


def test_renyi3_second_derivative_limit_at_zero():
    # in natural units the order-3 curvature tends to +3/2 at the boundary,
    # which is why the concavity argument fails for p > 2
    spec = EntropySpec.from_string("R:p=3:b=e")
    assert derivative("qubit_f", spec, 2, 1e-9) == pytest.approx(1.5, abs=1e-6)
    assert derivative("qubit_f", spec, 2, 1e-7) > 0


def test_derivative_rejects_bad_arguments():
    with pytest.raises(ValueError):
        derivative("qubit_f", S2, 3, 0.3)
    with pytest.raises(ValueError):
        derivative("qubit_f", S2, 1, 0.0)
    with pytest.raises(ValueError):
        derivative("mode_g", S2, 1, 1.0)
    with pytest.raises(ValueError):
        derivative("edge", S2, 1, 0.3)


# --- monotonicity scans -----------------------------------------------------------


def test_scan_flags_renyi3_convex_region():
    rep = monotonicity_scan("qubit_f", EntropySpec.from_string("R:p=3"))
    assert rep.nondecreasing
    assert not rep.concave
    assert rep.n_convex_points > 0
    assert rep.max_second_derivative > 0
    assert rep.argmax_second_derivative < 0.01


@pytest.mark.parametrize("text", ["S", "R:p=1.5", "R:p=2", "T:q=1.5", "T:q=3"])
def test_scan_confirms_concavity_where_expected(text):
    rep = monotonicity_scan("qubit_f", EntropySpec.from_string(text))
    assert rep.nondecreasing and rep.concave
    assert rep.n_convex_points == 0


@pytest.mark.parametrize("text", ["S", "R:p=1.5", "R:p=3", "T:q=1.5", "T:q=3"])
def test_scan_mode_functions_all_concave(text):
    # concavity on the mode side is what makes the Gaussian polygon hold
    # at every order, including the ones refuted for qubits
    rep = monotonicity_scan("mode_g", EntropySpec.from_string(text))
    assert rep.nondecreasing and rep.concave


# --- family bridges ------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([1.5, 2.0, 3.0]))
def test_tsallis_from_renyi_identity(seed, q):
    lam = spectrum(random_density(4, 4, np.random.default_rng(seed))).values
    r = entropy_discrete(lam, EntropySpec(family="R", order=q, base=2.0))
    t = entropy_discrete(lam, EntropySpec(family="T", order=q, base=2.0))
    assert abs(tsallis_from_renyi_value(r, q, 2.0) - t) < 1e-10
