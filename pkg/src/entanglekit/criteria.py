"""Separability criteria and the combined classification pipeline.

Implements the four operational criteria — positive partial transpose,
reduction map, computable cross norm (realignment) and majorisation —
plus the Schmidt decomposition of pure states.  ``classify`` combines
them into a single verdict:

* ``Separable`` — PPT in 2x2, 2x3 or 3x2, where PPT is conclusive.
* ``EntangledDistillable`` — NPT with a qubit subsystem, or NPT with a
  violated reduction criterion.
* ``EntangledPPT`` — PPT but detected by the cross norm (bound
  entanglement).
* ``EntangledUndetermined`` — NPT in higher dimensions with no
  distillability certificate here.
* ``Undecided`` — everything the implemented criteria cannot settle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import partial_transpose, realign, schatten_norm
from .states import DensityMatrix, PureState
from .tolerances import CCN_EXCESS, PSD_ATOL

__all__ = [
    "ClassificationReport",
    "SchmidtDecomposition",
    "is_ppt",
    "reduction_check",
    "ccn_check",
    "majorisation_check",
    "schmidt",
    "classify",
    "verdict_from_flags",
]


def is_ppt(rho: DensityMatrix) -> tuple[bool, float]:
    """(PPT?, minimum eigenvalue of the partial transpose)."""
    pt = partial_transpose(rho.mat, rho.d1, rho.d2, subsystem="A")
    min_eig = float(np.linalg.eigvalsh(pt)[0])
    return min_eig >= -PSD_ATOL, min_eig


def reduction_check(rho: DensityMatrix) -> tuple[bool, tuple[float, float]]:
    """Reduction criterion: I x rho_B - rho and rho_A x I - rho must stay PSD.

    Returns (violated, (min eig of the B-side map, min eig of the A-side
    map)); violation of either certifies distillable entanglement.
    """
    rho_a = rho.reduced("A")
    rho_b = rho.reduced("B")
    m_b = np.kron(np.eye(rho.d1), rho_b) - rho.mat
    m_a = np.kron(rho_a, np.eye(rho.d2)) - rho.mat
    e_b = float(np.linalg.eigvalsh(m_b)[0])
    e_a = float(np.linalg.eigvalsh(m_a)[0])
    return (e_b < -PSD_ATOL or e_a < -PSD_ATOL), (e_b, e_a)


def ccn_check(rho: DensityMatrix) -> tuple[float, bool]:
    """Trace norm of the realigned matrix; > 1 detects entanglement.

    The flag uses a 1e-9 excess margin.  Unlike PPT this can fire on
    PPT states, which is how bound entanglement is certified here.
    """
    value = float(schatten_norm(realign(rho.mat, rho.d1, rho.d2), 1))
    return value, value > 1.0 + CCN_EXCESS


def majorisation_check(rho: DensityMatrix) -> bool:
    """True iff the spectrum of rho fails to be majorised by a reduction.

    Spectra are sorted in decreasing order, the reduced spectrum is
    zero-padded to the global dimension, and any partial sum of the
    global spectrum exceeding the reduced one by more than 1e-10 counts
    as a violation.  Necessary for separability.
    """
    spectrum = np.sort(np.linalg.eigvalsh(rho.mat))[::-1]
    n = rho.d1 * rho.d2
    for sub in ("A", "B"):
        reduced = np.sort(np.linalg.eigvalsh(rho.reduced(sub)))[::-1]
        padded = np.zeros(n)
        padded[: reduced.size] = reduced
        if np.any(np.cumsum(spectrum) > np.cumsum(padded) + 1e-10):
            return True
    return False


@dataclass
class SchmidtDecomposition:
    """psi = sum_i coefficients[i] * left_vectors[i] (x) right_vectors[i]."""

    coefficients: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray
    rank: int


def schmidt(psi: PureState) -> SchmidtDecomposition:
    """Schmidt decomposition via SVD of the d1 x d2 amplitude matrix.

    Coefficients are the nonincreasing positive singular values; the
    rank equals the rank of either reduced density matrix.
    """
    u, s, vh = np.linalg.svd(psi.amplitude_matrix(), full_matrices=False)
    keep = s > 1e-10
    return SchmidtDecomposition(
        coefficients=s[keep],
        left_vectors=u[:, keep].T.copy(),
        right_vectors=vh[keep, :].copy(),
        rank=int(np.count_nonzero(keep)),
    )


@dataclass
class ClassificationReport:
    """Outcome of every criterion plus the combined verdict."""

    ppt: bool
    min_pt_eigenvalue: float
    reduction_violated: bool
    ccn_value: float
    ccn_flag: bool
    majorisation_violated: bool
    verdict: str
    reduction_min_eigs: tuple[float, float] = field(default=(0.0, 0.0))

    def to_dict(self) -> dict:
        return {
            "ppt": self.ppt,
            "min_pt_eigenvalue": self.min_pt_eigenvalue,
            "reduction_violated": self.reduction_violated,
            "ccn_value": self.ccn_value,
            "ccn_flag": self.ccn_flag,
            "majorisation_violated": self.majorisation_violated,
            "verdict": self.verdict,
        }


def verdict_from_flags(
    d1: int, d2: int, ppt: bool, reduction_violated: bool, ccn_flag: bool
) -> str:
    """Verdict logic shared by classify and the batched simplex scans."""
    if not ppt:
        if min(d1, d2) == 2 or reduction_violated:
            return "EntangledDistillable"
        return "EntangledUndetermined"
    if (d1, d2) in ((2, 2), (2, 3), (3, 2)):
        return "Separable"
    if ccn_flag:
        return "EntangledPPT"
    return "Undecided"


def classify(rho: DensityMatrix) -> ClassificationReport:
    """Run every implemented criterion and combine them into a verdict."""
    ppt, min_eig = is_ppt(rho)
    red_violated, red_eigs = reduction_check(rho)
    ccn_value, ccn_flag = ccn_check(rho)
    maj = majorisation_check(rho)
    verdict = verdict_from_flags(rho.d1, rho.d2, ppt, red_violated, ccn_flag)
    return ClassificationReport(
        ppt=ppt,
        min_pt_eigenvalue=min_eig,
        reduction_violated=red_violated,
        ccn_value=ccn_value,
        ccn_flag=ccn_flag,
        majorisation_violated=maj,
        verdict=verdict,
        reduction_min_eigs=red_eigs,
    )
