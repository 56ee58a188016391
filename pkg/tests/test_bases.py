import numpy as np
import pytest
from numpy.testing import assert_allclose

from entanglekit.bases import (
    BlochVector,
    bloch_decompose,
    bloch_reconstruct,
    correlation_tensor,
    gell_mann,
    pauli,
    weyl,
    weyl_index_order,
)
from entanglekit.states import DensityMatrix, bell_state, from_pure, maximally_mixed


def test_pauli_matrices():
    assert_allclose(pauli(1), [[0, 1], [1, 0]])
    assert_allclose(pauli(2), [[0, -1j], [1j, 0]])
    assert_allclose(pauli(3), [[1, 0], [0, -1]])
    for bad in (0, 4):
        with pytest.raises(ValueError):
            pauli(bad)


def test_pauli_returns_copy():
    m = pauli(1)
    m[0, 0] = 99.0
    assert pauli(1)[0, 0] == 0.0


def test_gell_mann_d2_is_pauli():
    gm = gell_mann(2)
    assert len(gm) == 3
    for g, i in zip(gm, (1, 2, 3)):
        assert_allclose(g, pauli(i))


def test_gell_mann_d3_diagonal():
    gm = gell_mann(3)
    assert len(gm) == 8
    # last generator: sqrt(1/3) diag(1, 1, -2)
    assert_allclose(gm[-1], np.diag([1, 1, -2]) / np.sqrt(3), atol=1e-15)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_gell_mann_orthogonality(d):
    """Traceless, Hermitian, trace(G_i G_j) = 2 delta_ij."""
    gm = gell_mann(d)
    assert len(gm) == d * d - 1
    for i, gi in enumerate(gm):
        assert abs(np.trace(gi)) < 1e-14
        assert_allclose(gi, gi.conj().T, atol=1e-15)
        for j, gj in enumerate(gm):
            want = 2.0 if i == j else 0.0
            assert np.trace(gi @ gj) == pytest.approx(want, abs=1e-13)


def test_weyl_d2_against_paulis():
    assert_allclose(weyl(2, 0, 0), np.eye(2))
    assert_allclose(weyl(2, 0, 1), pauli(1))
    assert_allclose(weyl(2, 1, 0), pauli(3))
    assert_allclose(weyl(2, 1, 1), 1j * pauli(2))


def test_weyl_d3_shift():
    """W(0, 1) maps |k> onto |k+1 mod 3> when acting by conjugation on kets."""
    w = weyl(3, 0, 1)
    expected = np.zeros((3, 3))
    for k in range(3):
        expected[k, (k + 1) % 3] = 1.0
    assert_allclose(w, expected)


@pytest.mark.parametrize("d", [2, 3])
def test_weyl_unitary_orthogonal(d):
    ws = [weyl(d, m, n) for m in range(d) for n in range(d)]
    for i, wi in enumerate(ws):
        assert_allclose(wi @ wi.conj().T, np.eye(d), atol=1e-14)
        for j, wj in enumerate(ws):
            want = d if i == j else 0.0
            assert np.trace(wi.conj().T @ wj) == pytest.approx(want, abs=1e-12)


def test_weyl_index_order():
    assert weyl_index_order(2) == [(0, 1), (1, 0), (1, 1)]
    assert len(weyl_index_order(3)) == 8


def test_bloch_qubit_ground_state():
    rho = DensityMatrix(np.diag([1.0, 0.0]), 2, 1)
    bv = bloch_decompose(rho, basis="pauli")
    assert_allclose(bv.coefficients, [0.0, 0.0, 0.5], atol=1e-15)
    assert_allclose(bloch_reconstruct(bv), rho.mat, atol=1e-15)


@pytest.mark.parametrize("basis", ["gellmann", "weyl"])
def test_bloch_round_trip_qutrit(basis):
    rng = np.random.default_rng(4)
    g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    m = g @ g.conj().T
    rho = DensityMatrix(m / np.trace(m).real, 3, 1)
    bv = bloch_decompose(rho, basis=basis)
    assert_allclose(bloch_reconstruct(bv), rho.mat, atol=1e-13)


def test_bloch_mixed_state_is_origin():
    bv = bloch_decompose(maximally_mixed(3), basis="gellmann")
    assert_allclose(bv.coefficients, np.zeros(8), atol=1e-15)


def test_bloch_rejects_bipartite_input():
    with pytest.raises(ValueError):
        bloch_decompose(maximally_mixed(2, 2))


def test_bloch_vector_size_check():
    with pytest.raises(ValueError):
        BlochVector(np.zeros(5), "gellmann")


def test_correlation_tensor_singlet():
    ct = correlation_tensor(from_pure(bell_state("psi-")))
    assert_allclose(ct.a, np.zeros(3), atol=1e-14)
    assert_allclose(ct.b, np.zeros(3), atol=1e-14)
    assert_allclose(ct.t, -np.eye(3), atol=1e-14)


def test_correlation_tensor_reconstructs():
    rng = np.random.default_rng(12)
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    m = g @ g.conj().T
    rho = DensityMatrix(m / np.trace(m).real, 2, 2)
    ct = correlation_tensor(rho)
    recon = np.eye(4, dtype=complex)
    for m_ in range(3):
        recon += ct.a[m_] * np.kron(pauli(m_ + 1), np.eye(2))
        recon += ct.b[m_] * np.kron(np.eye(2), pauli(m_ + 1))
        for n_ in range(3):
            recon += ct.t[m_, n_] * np.kron(pauli(m_ + 1), pauli(n_ + 1))
    assert_allclose(recon / 4.0, rho.mat, atol=1e-13)


def test_correlation_tensor_product_state():
    """For a product state t factorizes as the outer product of a and b."""
    up = np.array([1.0, 0.0])
    plus = np.array([1.0, 1.0]) / np.sqrt(2)
    rho = DensityMatrix(np.outer(np.kron(up, plus), np.kron(up, plus)), 2, 2)
    ct = correlation_tensor(rho)
    assert_allclose(ct.t, np.outer(ct.a, ct.b), atol=1e-14)
