import numpy as np
import pytest

from entanglekit.measures import (
    MEASURE_NAMES,
    concurrence_2q,
    eof_2q,
    evaluate_measure,
    fully_entangled_fraction,
    linear_entropy,
    negativity,
    pure_entanglement,
    random_robustness,
    von_neumann_entropy,
)
from entanglekit.states import (
    DensityMatrix,
    bell_state,
    from_pure,
    horodecki_3x3,
    max_entangled,
    maximally_mixed,
    random_density,
    random_separable,
    werner,
)
from oracles import fef_magic, haar_unitary

SINGLET = from_pure(bell_state("psi-"))


def test_linear_entropy_extremes():
    assert linear_entropy(SINGLET) == pytest.approx(0.0, abs=1e-12)
    assert linear_entropy(maximally_mixed(2, 2)) == pytest.approx(1.0, abs=1e-12)
    assert linear_entropy(werner(0.75)) == pytest.approx(5.0 / 9.0, abs=1e-12)


def test_von_neumann_entropy_values():
    assert von_neumann_entropy(SINGLET) == pytest.approx(0.0, abs=1e-10)
    assert von_neumann_entropy(maximally_mixed(2, 2)) == pytest.approx(2.0, abs=1e-12)
    rho = DensityMatrix(np.diag([0.75, 0.25]), 2, 1)
    assert von_neumann_entropy(rho) == pytest.approx(0.8112781244591328, abs=1e-12)


def test_pure_entanglement():
    assert pure_entanglement(bell_state("psi-")) == pytest.approx(1.0, abs=1e-12)
    assert pure_entanglement(max_entangled(3)) == pytest.approx(np.log2(3), abs=1e-12)
    from entanglekit.states import PureState

    product = PureState([1.0, 0.0, 0.0, 0.0], 2, 2)
    assert pure_entanglement(product) == pytest.approx(0.0, abs=1e-12)


def test_concurrence_bell_and_werner():
    assert concurrence_2q(SINGLET) == pytest.approx(1.0, abs=1e-12)
    # Bell-diagonal: C = max(0, 2 F_max - 1)
    assert concurrence_2q(werner(0.75)) == pytest.approx(0.5, abs=1e-12)
    assert concurrence_2q(werner(0.5)) == pytest.approx(0.0, abs=1e-12)
    assert concurrence_2q(maximally_mixed(2, 2)) == 0.0


def test_concurrence_separable_sampled():
    for seed in range(6):
        assert concurrence_2q(random_separable(2, 2, 5, seed=seed)) <= 1e-8


def test_concurrence_pure_alpha_family():
    """C(alpha|00> + beta|11>) = 2 alpha beta."""
    from entanglekit.states import PureState

    for alpha in (0.3, 0.6, 0.9):
        beta = np.sqrt(1 - alpha**2)
        psi = PureState([alpha, 0.0, 0.0, beta], 2, 2)
        assert concurrence_2q(from_pure(psi)) == pytest.approx(
            2 * alpha * beta, abs=1e-12
        )


def test_concurrence_requires_two_qubits():
    with pytest.raises(ValueError):
        concurrence_2q(maximally_mixed(3, 3))


def test_eof_values():
    assert eof_2q(SINGLET) == pytest.approx(1.0, abs=1e-12)
    assert eof_2q(werner(0.75)) == pytest.approx(0.35457890266526954, abs=1e-12)
    assert eof_2q(werner(0.4)) == 0.0


def test_eof_monotone_in_concurrence():
    values = [eof_2q(werner(f)) for f in np.linspace(0.5, 1.0, 11)]
    assert all(b >= a for a, b in zip(values, values[1:]))


def test_negativity():
    assert negativity(SINGLET) == pytest.approx(0.5, abs=1e-12)
    assert negativity(werner(0.75)) == pytest.approx(0.25, abs=1e-12)
    assert negativity(maximally_mixed(2, 2)) == 0.0
    assert negativity(from_pure(max_entangled(3))) == pytest.approx(1.0, abs=1e-12)
    # normalized form scores 1 on any maximally entangled state
    assert negativity(SINGLET, normalized=True) == pytest.approx(1.0, abs=1e-12)
    assert negativity(from_pure(max_entangled(3)), normalized=True) == pytest.approx(
        1.0, abs=1e-12
    )


def test_negativity_zero_iff_ppt_sampled():
    from entanglekit.criteria import is_ppt

    for seed in range(8):
        rho = random_density(2, 2, 4, seed=seed)
        ppt, _ = is_ppt(rho)
        assert (negativity(rho) < 1e-10) == ppt


def test_fef_known_states():
    assert fully_entangled_fraction(SINGLET, 2) == pytest.approx(1.0, abs=1e-9)
    assert fully_entangled_fraction(maximally_mixed(2, 2), 2) == pytest.approx(
        0.25, abs=1e-9
    )
    ket00 = DensityMatrix(np.diag([1.0, 0, 0, 0]), 2, 2)
    assert fully_entangled_fraction(ket00, 2) == pytest.approx(0.5, abs=1e-9)


def test_fef_matches_magic_basis_closed_form():
    for seed in range(8):
        rho = random_density(2, 2, 3, seed=seed)
        assert fully_entangled_fraction(rho, 2) == pytest.approx(
            fef_magic(rho), abs=1e-8
        )


def test_fef_local_unitary_invariant():
    rng = np.random.default_rng(33)
    rho = random_density(2, 2, 2, seed=4)
    base = fully_entangled_fraction(rho, 2)
    for _ in range(3):
        u = np.kron(haar_unitary(2, rng), haar_unitary(2, rng))
        rotated = DensityMatrix(u @ rho.mat @ u.conj().T, 2, 2)
        assert fully_entangled_fraction(rotated, 2) == pytest.approx(base, abs=1e-8)


def test_random_robustness_values():
    assert random_robustness(SINGLET) == pytest.approx(2.0, abs=1e-7)
    assert random_robustness(werner(0.75)) == pytest.approx(1.0, abs=1e-7)
    assert random_robustness(maximally_mixed(2, 2)) == 0.0
    assert random_robustness(random_separable(2, 2, 5, seed=2)) == 0.0


def test_random_robustness_monotone_on_werner_line():
    vals = [random_robustness(werner(f)) for f in (0.6, 0.8, 1.0)]
    assert vals[0] < vals[1] < vals[2]


def test_evaluate_measure_dispatch():
    res = evaluate_measure(SINGLET, "concurrence")
    assert res.name == "concurrence"
    assert res.value == pytest.approx(1.0, abs=1e-10)
    assert res.units == "dimensionless"
    res = evaluate_measure(SINGLET, "eof")
    assert res.units == "ebits"
    with pytest.raises(ValueError):
        evaluate_measure(SINGLET, "magic")
    assert set(MEASURE_NAMES) >= {
        "concurrence",
        "eof",
        "negativity",
        "linear_entropy",
        "von_neumann_entropy",
        "fully_entangled_fraction",
        "random_robustness",
    }


def test_evaluate_measure_labels_inexact_robustness():
    res = evaluate_measure(horodecki_3x3(0.5), "random_robustness")
    assert res.name == "random_robustness_lower_bound"
