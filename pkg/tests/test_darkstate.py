import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from actap.chain import build_hamiltonian
from actap.darkstate import dark_state, dark_state_overlap
from actap.errors import DegenerateInputError, DomainError
from actap.spectrum import diagonalize

from conftest import svd_null_vector

positive_couplings = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.floats(1e-3, 50), min_size=2 * n, max_size=2 * n)
)


def test_odd_coupling_off_pins_first_site():
    np.testing.assert_array_equal(dark_state([0, 1, 0.5, 1]), [1, 0, 0, 0, 0])


def test_last_even_coupling_off_pins_last_site():
    np.testing.assert_array_equal(dark_state([1, 0.5, 1, 0]), [0, 0, 0, 0, 1])


def test_alternating_five_site_values():
    # frozen from the SVD null vector of the 5x5 matrix
    expected = [0.90632023, 0.0, -0.38842295, 0.0, 0.16646698]
    psi = dark_state([0.3, 0.7, 0.3, 0.7])
    np.testing.assert_allclose(psi.real, expected, atol=1e-8)
    np.testing.assert_allclose(psi.real, svd_null_vector([0.3, 0.7, 0.3, 0.7]), atol=1e-12)
    assert not psi.imag.any()


def test_five_site_product_formula():
    w1, w2, w3, w4 = 0.3, 0.7, 0.3, 0.7
    raw = np.array([w2 * w4, 0, -w1 * w4, 0, w1 * w3])
    np.testing.assert_allclose(dark_state([w1, w2, w3, w4]).real, raw / np.linalg.norm(raw), atol=1e-15)


def test_uniform_couplings():
    np.testing.assert_allclose(dark_state([1, 1, 1, 1]).real, np.array([1, 0, -1, 0, 1]) / np.sqrt(3), atol=1e-15)


def test_sign_convention_when_first_site_empty():
    psi = dark_state([1.0, 0.0, 1.0, 1.0])
    assert psi[0] == 0
    assert psi[2].real > 0


def test_degenerate_input():
    with pytest.raises(DegenerateInputError):
        dark_state([0, 0, 1, 1])
    with pytest.raises(DegenerateInputError):
        dark_state([0, 0])


def test_overlap_examples():
    assert dark_state_overlap([0, 1, 1, 1], 1) == 1.0
    assert dark_state_overlap([0.3, 0.7, 0.3, 0.7], 2) == 0.0
    with pytest.raises(DomainError):
        dark_state_overlap([0, 1, 1, 1], 6)
    with pytest.raises(DomainError):
        dark_state_overlap([0, 1, 1, 1], 0)


def test_overlap_small_leak_first_order():
    # floored symmetric chain at t=0: (eps, 1, eps, 1)
    eps = 0.05
    exact = 1 / np.sqrt(1 + eps**2 + eps**4)
    got = dark_state_overlap([eps, 1, eps, 1], 1)
    assert got == pytest.approx(exact, abs=1e-15)
    assert abs(got - (1 - eps**2 / 2)) < eps**4
    # with only the first coupling leaking, both later sites pick up weight
    assert dark_state_overlap([eps, 1, 1, 1], 1) == pytest.approx(1 / np.sqrt(1 + 2 * eps**2), abs=1e-15)


def test_long_chain_products_stay_finite():
    omegas = np.tile([1e-3, 1e3], 100)
    psi = dark_state(omegas)
    assert np.isfinite(psi).all()
    assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-12)


@given(positive_couplings)
def test_null_state_properties(omegas):
    omegas = np.array(omegas)
    psi = dark_state(omegas)
    h = build_hamiltonian(omegas)
    assert np.linalg.norm(h @ psi) <= 1e-10 * np.linalg.norm(omegas)
    assert not psi[1::2].any()
    assert abs(np.linalg.norm(psi) - 1) <= 1e-12


@given(positive_couplings, st.floats(1e-3, 1e3))
def test_scale_invariance(omegas, c):
    omegas = np.array(omegas)
    np.testing.assert_allclose(dark_state(c * omegas), dark_state(omegas), atol=1e-12)


@settings(max_examples=200)
@given(positive_couplings)
def test_matches_numeric_zero_mode(omegas):
    omegas = np.array(omegas)
    eigs = diagonalize(build_hamiltonian(omegas))
    numeric = eigs.eigenvectors[:, eigs.zero_index()]
    assert abs(np.vdot(dark_state(omegas), numeric)) >= 1 - 1e-10
