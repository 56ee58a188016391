"""Entanglement and mixedness measures.

Closed forms where they exist (entropies, two-qubit concurrence and
entanglement of formation, negativity), seeded optimization for the
fully entangled fraction, and oracle bisection for the random
robustness.  All entropies use base-2 logarithms, so entropic values
are in ebits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .criteria import is_ppt
from .linalg import partial_transpose, schatten_norm
from .states import DensityMatrix, PureState, from_pure
from .tolerances import PSD_ATOL

__all__ = [
    "MeasureResult",
    "linear_entropy",
    "von_neumann_entropy",
    "pure_entanglement",
    "concurrence_2q",
    "eof_2q",
    "negativity",
    "fully_entangled_fraction",
    "random_robustness",
    "evaluate_measure",
    "MEASURE_NAMES",
]

_EXACT_ROBUSTNESS_DIMS = ((2, 2), (2, 3), (3, 2))


@dataclass
class MeasureResult:
    """Named measure value with its units and computation method."""

    name: str
    value: float
    units: str  # ebits | dimensionless
    method: str  # closed-form | optimization | bisection

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "value": self.value,
            "units": self.units,
            "method": self.method,
        }


def linear_entropy(rho: DensityMatrix) -> float:
    """(d/(d-1)) (1 - trace(rho^2)); 0 for pure states, 1 at I/d."""
    d = rho.dim
    if d == 1:
        raise ValueError("linear entropy is undefined for a one-dimensional system")
    purity = float(np.trace(rho.mat @ rho.mat).real)
    return (d / (d - 1.0)) * (1.0 - purity)


def _entropy_bits(eigenvalues: np.ndarray) -> float:
    lam = eigenvalues[eigenvalues > 1e-12]
    return float(-np.sum(lam * np.log2(lam)))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """-sum lambda_i log2 lambda_i, with 0 log 0 = 0."""
    return _entropy_bits(np.linalg.eigvalsh(rho.mat))


def pure_entanglement(psi: PureState) -> float:
    """Entropy of entanglement: von Neumann entropy of either subsystem.

    Both reductions are computed and must agree, which they do for any
    properly normalized pure state.
    """
    rho = from_pure(psi)
    e_a = _entropy_bits(np.linalg.eigvalsh(rho.reduced("A")))
    e_b = _entropy_bits(np.linalg.eigvalsh(rho.reduced("B")))
    if abs(e_a - e_b) > 1e-9:
        raise ArithmeticError(f"subsystem entropies disagree: {e_a} vs {e_b}")
    return e_a


_SY_SY = np.kron(
    np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]])
).real  # sigma_y x sigma_y is real (diag +-1 antidiagonal)


def concurrence_2q(rho: DensityMatrix) -> float:
    """Two-qubit concurrence max(0, l1 - l2 - l3 - l4).

    The l_i are the decreasingly sorted square roots of the eigenvalues
    of rho (sy x sy) rho* (sy x sy).  They are computed as the singular
    values of sqrt(rho) (sy x sy) conj(sqrt(rho)) — the same numbers, but
    with no square root of a round-off-level eigenvalue anywhere (the
    defective product would cost ~1e-9 of accuracy otherwise).
    """
    if (rho.d1, rho.d2) != (2, 2):
        raise ValueError(f"concurrence is a 2x2 quantity, got {rho.d1}x{rho.d2}")
    vals, vecs = np.linalg.eigh(rho.mat)
    root = (vecs * np.sqrt(np.clip(vals, 0.0, None))) @ vecs.conj().T
    lam = np.linalg.svd(root @ _SY_SY @ root.conj(), compute_uv=False)
    return max(0.0, float(lam[0] - lam[1] - lam[2] - lam[3]))


def _binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1.0 - x) * np.log2(1.0 - x))


def eof_2q(rho: DensityMatrix) -> float:
    """Entanglement of formation h((1 + sqrt(1 - C^2))/2) in ebits."""
    c = concurrence_2q(rho)
    return _binary_entropy((1.0 + np.sqrt(max(0.0, 1.0 - c * c))) / 2.0)


def negativity(rho: DensityMatrix, normalized: bool = False) -> float:
    """(||rho^{T_A}||_1 - 1)/2, zero exactly on PPT states.

    A maximally entangled d x d state scores (d-1)/2 under this form;
    pass ``normalized=True`` to divide by (min(d1,d2) - 1)/2 so that it
    scores 1 instead.
    """
    pt = partial_transpose(rho.mat, rho.d1, rho.d2, subsystem="A")
    value = max(0.0, (float(schatten_norm(pt, 1)) - 1.0) / 2.0)
    if normalized:
        value /= (min(rho.d1, rho.d2) - 1.0) / 2.0
    return value


def _polar_unitary(g: np.ndarray) -> np.ndarray:
    u, _, vh = np.linalg.svd(g)
    return u @ vh


def fully_entangled_fraction(rho: DensityMatrix, d: int, seed: int = 0, starts: int = 8) -> float:
    """max <Psi|rho|Psi> over maximally entangled |Psi> = (U x I)|Omega>.

    With row-major vectorization the objective is
    f(U) = vec(U)* rho vec(U) / d, and the exactly solvable update
    U <- polar(mat(rho vec(U))) never decreases f; the ascent runs from
    the identity and ``starts`` seeded random unitaries.
    """
    if rho.d1 != rho.d2 or rho.d1 != d:
        raise ValueError(
            f"fully entangled fraction needs d1 == d2 == d, got {rho.d1}x{rho.d2} vs d={d}"
        )
    rng = np.random.default_rng(seed)
    candidates = [np.eye(d, dtype=complex)]
    for _ in range(starts):
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        candidates.append(_polar_unitary(g))

    best = 0.0
    for u in candidates:
        vec = u.reshape(-1)
        value = float((vec.conj() @ rho.mat @ vec).real) / d
        for _ in range(200):
            g = (rho.mat @ vec).reshape(d, d)
            u = _polar_unitary(g)
            vec = u.reshape(-1)
            new = float((vec.conj() @ rho.mat @ vec).real) / d
            if new - value < 1e-12:
                value = max(value, new)
                break
            value = new
        best = max(best, value)
    return best


def random_robustness(rho: DensityMatrix) -> float:
    """Smallest s with (rho + s I/D)/(1+s) passing the separability oracle.

    The oracle is PPT, which is exact in 2x2 and 2x3; in higher
    dimensions the returned value is only a lower bound on the true
    robustness.  Found by bisection to an interval width of 1e-9.
    """
    n = rho.dim

    def mixes_to_ppt(s: float) -> bool:
        mixed = (rho.mat + s * np.eye(n) / n) / (1.0 + s)
        pt = partial_transpose(mixed, rho.d1, rho.d2, subsystem="A")
        return float(np.linalg.eigvalsh(pt)[0]) >= -PSD_ATOL

    if is_ppt(rho)[0]:
        return 0.0
    lo, hi = 0.0, float(n)  # PT eigenvalues are >= -1/2, so s = D always suffices
    if not mixes_to_ppt(hi):
        raise ArithmeticError("robustness bracket failed; white noise did not separate")
    while hi - lo > 1e-9:
        mid = (lo + hi) / 2.0
        if mixes_to_ppt(mid):
            hi = mid
        else:
            lo = mid
    return hi


MEASURE_NAMES = (
    "linear_entropy",
    "von_neumann_entropy",
    "concurrence",
    "eof",
    "negativity",
    "negativity_normalized",
    "fully_entangled_fraction",
    "random_robustness",
)


def evaluate_measure(rho: DensityMatrix, name: str, seed: int = 0) -> MeasureResult:
    """Dispatch a measure by name, labeling units and method for reports."""
    if name == "linear_entropy":
        return MeasureResult(name, linear_entropy(rho), "dimensionless", "closed-form")
    if name == "von_neumann_entropy":
        return MeasureResult(name, von_neumann_entropy(rho), "ebits", "closed-form")
    if name == "concurrence":
        return MeasureResult(name, concurrence_2q(rho), "dimensionless", "closed-form")
    if name == "eof":
        return MeasureResult(name, eof_2q(rho), "ebits", "closed-form")
    if name == "negativity":
        return MeasureResult(name, negativity(rho), "dimensionless", "closed-form")
    if name == "negativity_normalized":
        return MeasureResult(
            name, negativity(rho, normalized=True), "dimensionless", "closed-form"
        )
    if name == "fully_entangled_fraction":
        if rho.d1 != rho.d2:
            raise ValueError("fully_entangled_fraction needs equal subsystem dimensions")
        value = fully_entangled_fraction(rho, rho.d1, seed=seed)
        return MeasureResult(name, value, "dimensionless", "optimization")
    if name == "random_robustness":
        value = random_robustness(rho)
        label = name
        if (rho.d1, rho.d2) not in _EXACT_ROBUSTNESS_DIMS:
            label = "random_robustness_lower_bound"
        return MeasureResult(label, value, "dimensionless", "bisection")
    raise ValueError(f"unknown measure {name!r}; choose from {', '.join(MEASURE_NAMES)}")
