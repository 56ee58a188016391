import numpy as np
import pytest
from numpy.testing import assert_allclose

from entanglekit.criteria import is_ppt
from entanglekit.geometry import (
    Witness,
    bnt_bounds,
    bures_distance,
    closest_separable_check,
    fidelity,
    geometric_witness,
    hs_distance,
    min_product_expectation,
    nearest_ppt_state,
    relative_entropy,
    verify_witness,
)
from entanglekit.simplex import SimplexPoint2x2, bell_diagonal
from entanglekit.states import (
    bell_state,
    from_pure,
    maximally_mixed,
    random_density,
    random_separable,
    werner,
)
from oracles import product_min_grid

SINGLET = from_pure(bell_state("psi-"))
MIXED = maximally_mixed(2, 2)


def test_hs_distance_values():
    assert hs_distance(SINGLET, SINGLET) == 0.0
    assert hs_distance(SINGLET, MIXED) == pytest.approx(np.sqrt(3) / 2, abs=1e-12)


def test_hs_distance_triangle():
    a = random_density(2, 2, 4, seed=1)
    b = random_density(2, 2, 4, seed=2)
    c = random_density(2, 2, 4, seed=3)
    assert hs_distance(a, c) <= hs_distance(a, b) + hs_distance(b, c) + 1e-12


def test_hs_distance_dim_mismatch():
    with pytest.raises(ValueError):
        hs_distance(SINGLET, maximally_mixed(3, 3))


def test_relative_entropy_basics():
    assert relative_entropy(MIXED, MIXED) == pytest.approx(0.0, abs=1e-12)
    assert relative_entropy(werner(0.75), MIXED) == pytest.approx(
        0.7924812503605774, abs=1e-12
    )
    # rho outside sigma's support
    assert relative_entropy(MIXED, SINGLET) == np.inf
    # but a pure state relative to itself is fine
    assert relative_entropy(SINGLET, SINGLET) == pytest.approx(0.0, abs=1e-12)


def test_relative_entropy_asymmetric():
    a = werner(0.9)
    assert relative_entropy(a, MIXED) != pytest.approx(
        relative_entropy(MIXED, a), abs=1e-6
    )


def test_fidelity_values():
    assert fidelity(SINGLET, SINGLET) == pytest.approx(1.0, abs=1e-12)
    assert fidelity(SINGLET, MIXED) == pytest.approx(0.25, abs=1e-12)
    # pure state: F = <psi|sigma|psi>
    w = werner(0.8)
    phip = bell_state("phi+").amplitudes
    want = (phip.conj() @ w.mat @ phip).real
    assert fidelity(from_pure(bell_state("phi+")), w) == pytest.approx(want, abs=1e-10)


def test_fidelity_symmetric():
    a = random_density(2, 2, 3, seed=11)
    b = random_density(2, 2, 4, seed=12)
    assert fidelity(a, b) == pytest.approx(fidelity(b, a), abs=1e-10)


def test_bures_distance_range():
    assert bures_distance(MIXED, MIXED) == pytest.approx(0.0, abs=1e-9)
    orth = from_pure(bell_state("phi+"))
    assert bures_distance(SINGLET, orth) == pytest.approx(2.0, abs=1e-10)


def test_geometric_witness_plane_identities():
    sigma, _ = nearest_ppt_state(SINGLET)
    w = geometric_witness(SINGLET, sigma)
    assert np.trace(sigma.mat @ w.op).real == pytest.approx(0.0, abs=1e-10)
    assert np.trace(SINGLET.mat @ w.op).real == pytest.approx(-1.0 / 3.0, abs=1e-10)


def test_min_product_expectation_identity_and_projector():
    assert min_product_expectation(Witness(np.eye(4), 2, 2)) == pytest.approx(
        1.0, abs=1e-9
    )
    w = Witness(-SINGLET.mat, 2, 2)
    # largest product overlap with a Bell projector is 1/2
    assert min_product_expectation(w) == pytest.approx(-0.5, abs=1e-9)


def test_min_product_expectation_vs_grid():
    rng = np.random.default_rng(17)
    for k in range(4):
        g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        h = (g + g.conj().T) / 2
        w = Witness(h, 2, 2)
        mpe = min_product_expectation(w, seed=k)
        grid = product_min_grid(h)
        assert mpe <= grid + 1e-9
        assert grid - mpe < 0.02


def test_verify_witness_sets_flags():
    sigma, _ = nearest_ppt_state(SINGLET)
    w = verify_witness(geometric_witness(SINGLET, sigma))
    assert w.verified
    assert w.min_product_expectation == pytest.approx(0.0, abs=1e-7)
    bad = verify_witness(Witness(-np.eye(4), 2, 2))
    assert not bad.verified
    assert bad.min_product_expectation == pytest.approx(-1.0, abs=1e-9)


def test_witness_requires_hermitian():
    with pytest.raises(ValueError):
        Witness(np.array([[0.0, 1.0], [0.0, 0.0]]), 1, 2)


def test_nearest_ppt_of_ppt_state_is_itself():
    sigma, dist = nearest_ppt_state(MIXED)
    assert dist == pytest.approx(0.0, abs=1e-12)
    assert_allclose(sigma.mat, MIXED.mat, atol=1e-12)


def test_nearest_ppt_singlet():
    sigma, dist = nearest_ppt_state(SINGLET)
    assert dist == pytest.approx(1 / np.sqrt(3), abs=1e-12)
    expected = bell_diagonal(SimplexPoint2x2([1 / 6, 1 / 2, 1 / 6, 1 / 6]))
    assert_allclose(sigma.mat, expected.mat, atol=1e-12)


def test_nearest_ppt_werner_on_bell_line():
    """The clipped state coincides with the radial projection onto the
    PPT boundary within the Bell-diagonal plane."""
    rho = werner(0.9)
    sigma, dist = nearest_ppt_state(rho)
    assert dist == pytest.approx(4 / np.sqrt(75), abs=1e-12)
    assert is_ppt(sigma)[0]


def test_nearest_ppt_failure_keeps_lower_bound():
    # For strongly rank-deficient inputs the transposed-back clip can leave
    # the PSD cone; the procedure then reports (None, lower bound on the
    # distance) rather than a bogus state.
    rho = random_density(2, 2, 1, seed=0)
    assert not is_ppt(rho)[0]
    sigma, dist = nearest_ppt_state(rho)
    assert sigma is None
    assert dist > 0.0


def test_closest_separable_check():
    sigma, _ = nearest_ppt_state(SINGLET)
    assert closest_separable_check(SINGLET, sigma)
    assert not closest_separable_check(SINGLET, MIXED)
    with pytest.raises(ValueError):
        closest_separable_check(MIXED, MIXED)


def test_bnt_bounds_tight_at_optimum():
    sigma, dist = nearest_ppt_state(SINGLET)
    lower, upper = bnt_bounds(SINGLET, sigma)
    assert upper == pytest.approx(1 / np.sqrt(3), abs=1e-12)
    assert lower == pytest.approx(upper, abs=1e-7)


def test_bnt_bounds_loose_reference():
    lower, upper = bnt_bounds(SINGLET, MIXED)
    assert upper == pytest.approx(np.sqrt(3) / 2, abs=1e-12)
    assert lower == pytest.approx(1 / np.sqrt(3), abs=1e-7)
    assert lower < upper


def test_bnt_bounds_equal_states():
    assert bnt_bounds(MIXED, MIXED) == (0.0, 0.0)


def test_bnt_lower_never_exceeds_upper_sampled():
    for seed in range(6):
        rho = random_density(2, 2, 4, seed=seed)
        omega = random_separable(2, 2, 5, seed=seed + 100)
        lower, upper = bnt_bounds(rho, omega, seed=seed)
        assert 0.0 <= lower <= upper + 1e-7
