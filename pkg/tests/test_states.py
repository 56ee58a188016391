import numpy as np
import pytest
from numpy.testing import assert_allclose

from entanglekit.states import (
    DensityMatrix,
    PureState,
    bell_state,
    from_pure,
    horodecki_3x3,
    load_state,
    max_entangled,
    maximally_mixed,
    random_density,
    random_separable,
    save_state,
    state_from_json,
    state_to_json,
    werner,
)

S2 = 1.0 / np.sqrt(2.0)


def test_bell_state_vectors():
    assert_allclose(bell_state("psi+").amplitudes, [0, S2, S2, 0])
    assert_allclose(bell_state("psi-").amplitudes, [0, S2, -S2, 0])
    assert_allclose(bell_state("phi+").amplitudes, [S2, 0, 0, S2])
    assert_allclose(bell_state("phi-").amplitudes, [S2, 0, 0, -S2])


def test_bell_states_orthonormal():
    vs = np.stack([bell_state(l).amplitudes for l in ("psi+", "psi-", "phi+", "phi-")])
    assert_allclose(vs.conj() @ vs.T, np.eye(4), atol=1e-15)


def test_bell_state_rejects_unknown_label():
    with pytest.raises(ValueError):
        bell_state("sigma+")


def test_werner_bell_weights():
    """F on phi+, (1-F)/3 on each of the other three Bell projectors."""
    rho = werner(0.7)
    for label, want in (("phi+", 0.7), ("psi+", 0.1), ("psi-", 0.1), ("phi-", 0.1)):
        v = bell_state(label).amplitudes
        assert v.conj() @ rho.mat @ v == pytest.approx(want, abs=1e-14)


def test_werner_endpoints():
    assert_allclose(werner(1.0).mat, from_pure(bell_state("phi+")).mat, atol=1e-15)
    assert_allclose(werner(0.25).mat, np.eye(4) / 4, atol=1e-15)
    with pytest.raises(ValueError):
        werner(1.2)


def test_horodecki_matrix_entries():
    a = 0.3
    rho = horodecki_3x3(a)
    n = 8 * a + 1
    assert rho.mat[0, 4] == pytest.approx(a / n)
    assert rho.mat[0, 8] == pytest.approx(a / n)
    assert rho.mat[1, 1] == pytest.approx(a / n)
    assert rho.mat[6, 6] == pytest.approx((1 + a) / 2 / n)
    assert rho.mat[6, 8] == pytest.approx(np.sqrt(1 - a * a) / 2 / n)
    assert np.trace(rho.mat) == pytest.approx(1.0)


def test_horodecki_rejects_endpoints():
    for bad in (0.0, 1.0, -0.1):
        with pytest.raises(ValueError):
            horodecki_3x3(bad)


def test_max_entangled_amplitudes():
    psi = max_entangled(3)
    v = np.zeros(9)
    v[[0, 4, 8]] = 1 / np.sqrt(3)
    assert_allclose(psi.amplitudes, v)
    assert_allclose(psi.amplitude_matrix(), np.eye(3) / np.sqrt(3))


def test_reduced_of_max_entangled_is_mixed():
    rho = from_pure(max_entangled(3))
    assert_allclose(rho.reduced("A"), np.eye(3) / 3, atol=1e-14)
    assert_allclose(rho.reduced("B"), np.eye(3) / 3, atol=1e-14)


def test_reduced_of_product():
    a = np.array([1.0, 0.0])
    b = np.array([S2, S2])
    psi = PureState(np.kron(a, b), 2, 2)
    rho = from_pure(psi)
    assert_allclose(rho.reduced("A"), np.outer(a, a), atol=1e-14)
    assert_allclose(rho.reduced("B"), np.outer(b, b), atol=1e-14)


def test_density_matrix_validation():
    with pytest.raises(ValueError, match="trace must be 1"):
        DensityMatrix(np.eye(4) / 3, 2, 2)
    with pytest.raises(ValueError, match="Hermitian"):
        m = np.eye(4) / 4
        m[0, 1] = 0.3
        DensityMatrix(m, 2, 2)
    with pytest.raises(ValueError, match="positive semidefinite"):
        DensityMatrix(np.diag([0.75, 0.75, -0.25, -0.25]), 2, 2)
    with pytest.raises(ValueError, match="dimension mismatch"):
        DensityMatrix(np.eye(4) / 4, 2, 3)


def test_pure_state_validation():
    with pytest.raises(ValueError, match="norm"):
        PureState([1.0, 1.0, 0.0, 0.0], 2, 2)
    with pytest.raises(ValueError):
        PureState([1.0, 0.0, 0.0], 2, 2)


def test_random_density_seeded_and_ranked():
    r1 = random_density(2, 3, rank=2, seed=42)
    r2 = random_density(2, 3, rank=2, seed=42)
    assert np.array_equal(r1.mat, r2.mat)
    evals = np.linalg.eigvalsh(r1.mat)
    assert np.sum(evals > 1e-12) == 2
    assert np.trace(r1.mat).real == pytest.approx(1.0)
    with pytest.raises(ValueError):
        random_density(2, 2, rank=5, seed=0)


def test_random_separable_is_ppt():
    from entanglekit.criteria import is_ppt

    for seed in range(5):
        rho = random_separable(2, 2, n_terms=6, seed=seed)
        ppt, _ = is_ppt(rho)
        assert ppt


def test_maximally_mixed_unipartite_default():
    rho = maximally_mixed(3)
    assert rho.d1 == 3 and rho.d2 == 1
    assert_allclose(rho.mat, np.eye(3) / 3)


def test_json_round_trip_exact():
    rho = random_density(2, 2, rank=3, seed=9)
    text = state_to_json(rho)
    back = state_from_json(text)
    assert back.d1 == 2 and back.d2 == 2
    assert np.array_equal(back.mat, rho.mat)
    assert state_to_json(back) == text


def test_json_format_shape():
    text = state_to_json(maximally_mixed(2, 2))
    assert text.startswith('{\n  "d1": 2,\n  "d2": 2,\n  "matrix": [\n')
    assert text.endswith("\n")
    assert "[0.25, 0]" in text


def test_json_missing_field():
    with pytest.raises(ValueError, match="must define"):
        state_from_json('{"d1": 2, "matrix": []}')


def test_save_and_load(tmp_path):
    rho = werner(0.6)
    path = tmp_path / "w.json"
    save_state(rho, path)
    back = load_state(path)
    assert np.array_equal(back.mat, rho.mat)
