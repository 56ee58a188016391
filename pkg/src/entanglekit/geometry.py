"""Hilbert-space geometry: distances, geometric witnesses, nearest PPT state.

The central primitive is ``min_product_expectation``: the minimum of
<a x b| W |a x b> over unit product vectors, found by alternating
eigenvector descent (each side is exactly solvable with the other held
fixed) from a deterministic set of starting points.  It decides whether
an operator is an entanglement witness and powers the distance bounds.

Distances: Hilbert-Schmidt, quantum relative entropy (base-2 logs,
+inf when supports are incompatible) and the Bures distance 2 - 2*sqrt(F).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .linalg import herm_function, partial_transpose
from .states import DensityMatrix
from .tolerances import HERM_RTOL, WITNESS_ATOL, psd_tol

__all__ = [
    "Witness",
    "hs_distance",
    "relative_entropy",
    "bures_distance",
    "geometric_witness",
    "min_product_expectation",
    "verify_witness",
    "nearest_ppt_state",
    "closest_separable_check",
    "bnt_bounds",
]

_SUPPORT_CUTOFF = 1e-12


@dataclass
class Witness:
    """Hermitian operator with an optional product-minimum certificate.

    ``verified`` is true once ``min_product_expectation`` has been
    computed and found >= -1e-7 (nonnegative on all product states, so
    on all separable states by convexity).
    """

    op: np.ndarray
    d1: int
    d2: int
    min_product_expectation: float | None = None
    verified: bool = False

    def __post_init__(self) -> None:
        self.op = np.asarray(self.op, dtype=complex)
        scale = np.linalg.norm(self.op)
        if scale > 0 and np.linalg.norm(self.op - self.op.conj().T) > HERM_RTOL * scale:
            raise ValueError("witness operator must be Hermitian")


def _check_same_dims(rho: DensityMatrix, sigma: DensityMatrix) -> None:
    if (rho.d1, rho.d2) != (sigma.d1, sigma.d2):
        raise ValueError(
            f"dimension mismatch: {rho.d1}x{rho.d2} vs {sigma.d1}x{sigma.d2}"
        )


def hs_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Hilbert-Schmidt distance sqrt(trace((rho - sigma)^2))."""
    _check_same_dims(rho, sigma)
    return float(np.linalg.norm(rho.mat - sigma.mat))


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """trace(rho log2 rho - rho log2 sigma); +inf outside sigma's support."""
    _check_same_dims(rho, sigma)
    s_vals, s_vecs = np.linalg.eigh(sigma.mat)
    null = s_vals <= _SUPPORT_CUTOFF
    if np.any(null):
        null_proj = s_vecs[:, null] @ s_vecs[:, null].conj().T
        if np.trace(rho.mat @ null_proj).real > _SUPPORT_CUTOFF:
            return float("inf")
    r_vals = np.linalg.eigvalsh(rho.mat)
    r_vals = r_vals[r_vals > _SUPPORT_CUTOFF]
    term_rho = float(np.sum(r_vals * np.log2(r_vals)))
    log_sigma = (s_vecs * np.where(null, 0.0, np.log2(np.maximum(s_vals, _SUPPORT_CUTOFF)))) @ s_vecs.conj().T
    term_cross = float(np.trace(rho.mat @ log_sigma).real)
    return term_rho - term_cross


def fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Uhlmann fidelity [trace((sqrt(sigma) rho sqrt(sigma))^(1/2))]^2."""
    _check_same_dims(rho, sigma)
    root = herm_function(sigma.mat, lambda x: np.sqrt(np.maximum(x, 0.0)))
    inner = root @ rho.mat @ root
    vals = np.linalg.eigvalsh((inner + inner.conj().T) / 2.0)
    f = float(np.sum(np.sqrt(np.maximum(vals, 0.0))) ** 2)
    return min(f, 1.0) if f <= 1.0 + 1e-9 else f


def bures_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """2 - 2 sqrt(F); 0 for identical states, 2 for orthogonal pure ones."""
    f = fidelity(rho, sigma)
    if not -1e-9 <= f <= 1.0 + 1e-9:
        raise ArithmeticError(f"fidelity out of range: {f}")
    return float(2.0 - 2.0 * np.sqrt(max(f, 0.0)))


def geometric_witness(rho: DensityMatrix, rho_sep: DensityMatrix) -> Witness:
    """C = rho_sep - rho - <rho_sep|rho_sep - rho> I.

    By construction trace(rho_sep C) = 0 and
    trace(rho C) = -||rho_sep - rho||^2, so C separates rho from the
    hyperplane through rho_sep whenever the two differ.
    """
    _check_same_dims(rho, rho_sep)
    diff = rho_sep.mat - rho.mat
    shift = np.trace(rho_sep.mat.conj().T @ diff).real
    c = diff - shift * np.eye(rho.dim)
    if abs(np.trace(rho_sep.mat @ c).real) > 1e-10:
        raise ArithmeticError("witness construction lost the plane identity")
    expected = -float(np.linalg.norm(diff)) ** 2
    if abs(np.trace(rho.mat @ c).real - expected) > 1e-10:
        raise ArithmeticError("witness construction lost the distance identity")
    return Witness(c, rho.d1, rho.d2)


# --- product-expectation minimization ---------------------------------

def _ld_sequence(n_points: int, dim: int, seed: int) -> np.ndarray:
    """Deterministic low-discrepancy points in [0,1)^dim (additive recurrence)."""
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53]
    while len(primes) < dim:
        primes.append(primes[-1] + 2)  # coarse fallback, dims stay small
    alpha = np.sqrt(np.array(primes[:dim], dtype=float)) % 1.0
    idx = np.arange(1, n_points + 1)[:, None] + seed * n_points
    return (0.5 + idx * alpha[None, :]) % 1.0


def _unit_vectors_from_points(points: np.ndarray, d: int) -> np.ndarray:
    """Map rows of [0,1)^(2d) to unit complex d-vectors via Box-Muller."""
    u1 = np.clip(points[:, :d], 1e-12, 1.0)
    u2 = points[:, d:]
    z = np.sqrt(-2.0 * np.log(u1)) * np.exp(2j * np.pi * u2)
    norms = np.linalg.norm(z, axis=1, keepdims=True)
    return z / norms


def _alternating_min(tensor: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    """Descend <a x b|W|a x b> by alternating exact eigenvector updates."""
    value = np.einsum("i,k,ikjl,j,l->", a.conj(), b.conj(), tensor, a, b).real
    for _ in range(200):
        kb = np.einsum("i,ikjl,j->kl", a.conj(), tensor, a)
        vals, vecs = np.linalg.eigh((kb + kb.conj().T) / 2.0)
        b = vecs[:, 0]
        ka = np.einsum("k,ikjl,l->ij", b.conj(), tensor, b)
        vals, vecs = np.linalg.eigh((ka + ka.conj().T) / 2.0)
        a = vecs[:, 0]
        new = float(vals[0])
        if value - new < 1e-12:
            value = min(value, new)
            break
        value = new
    return value


def min_product_expectation(w: Witness, seed: int = 0, starts: int = 32) -> float:
    """Minimum of <a x b|W|a x b> over unit product vectors.

    Alternating descent is run from the computational product basis,
    from the best product approximation to the bottom eigenvector of W,
    and from ``starts`` seeded low-discrepancy points; the smallest
    stationary value is returned.  Deterministic for a given seed.
    """
    d1, d2 = w.d1, w.d2
    tensor_w = w.op.reshape(d1, d2, d1, d2)
    best = np.inf

    for i in range(d1):
        for k in range(d2):
            a = np.zeros(d1, dtype=complex)
            b = np.zeros(d2, dtype=complex)
            a[i] = 1.0
            b[k] = 1.0
            best = min(best, _alternating_min(tensor_w, a, b))

    vals, vecs = np.linalg.eigh(w.op)
    amp = vecs[:, 0].reshape(d1, d2)
    u, _, vh = np.linalg.svd(amp)
    best = min(best, _alternating_min(tensor_w, u[:, 0], vh[0, :]))

    points = _ld_sequence(starts, 2 * (d1 + d2), seed)
    a_starts = _unit_vectors_from_points(points[:, : 2 * d1], d1)
    b_starts = _unit_vectors_from_points(points[:, 2 * d1 :], d2)
    for a, b in zip(a_starts, b_starts):
        best = min(best, _alternating_min(tensor_w, a, b))
    return float(best)


def verify_witness(w: Witness, seed: int = 0) -> Witness:
    """Return a copy carrying its product minimum and the verified flag."""
    mpe = min_product_expectation(w, seed=seed)
    return replace(w, min_product_expectation=mpe, verified=mpe >= -WITNESS_ATOL)


# --- nearest PPT state and the distance bounds -------------------------

def nearest_ppt_state(rho: DensityMatrix) -> tuple[DensityMatrix | None, float]:
    """Closest-PPT candidate by spectrum clipping of the partial transpose.

    Eigendecompose rho^{T_A} = U D U*, shift-and-clip the spectrum
    (e_i = max(d_i + lam, 0) with lam chosen so the sum stays 1, solved
    exactly by a breakpoint scan) and transpose back.  If the result
    fails positivity, (None, distance) is returned and the distance is
    only a lower bound on the true one.
    """
    pt = partial_transpose(rho.mat, rho.d1, rho.d2, subsystem="A")
    vals, vecs = np.linalg.eigh(pt)
    order = np.argsort(vals)[::-1]
    d_sorted = vals[order]
    n = d_sorted.size
    lam = 0.0
    for k in range(1, n + 1):
        lam = (1.0 - float(np.sum(d_sorted[:k]))) / k
        low = d_sorted[k - 1] + lam
        high = d_sorted[k] + lam if k < n else -np.inf
        if low > 0.0 >= high:
            break
    e = np.maximum(vals + lam, 0.0)
    clipped = (vecs * e) @ vecs.conj().T
    sigma_mat = partial_transpose(clipped, rho.d1, rho.d2, subsystem="A")
    distance = float(np.linalg.norm(sigma_mat - rho.mat))
    min_eig = float(np.linalg.eigvalsh((sigma_mat + sigma_mat.conj().T) / 2.0)[0])
    if min_eig < -psd_tol():
        return None, distance
    return DensityMatrix(sigma_mat, rho.d1, rho.d2), distance


def closest_separable_check(
    rho: DensityMatrix, sigma: DensityMatrix, seed: int = 0
) -> bool:
    """Is sigma the closest separable state to rho?

    Builds the normalized geometric operator
    (sigma - rho - <sigma|sigma - rho> I)/||sigma - rho|| and returns
    true iff its product minimum is >= -1e-7: sigma is closest exactly
    when that plane does not cut into the separable set.
    """
    _check_same_dims(rho, sigma)
    diff = sigma.mat - rho.mat
    norm = float(np.linalg.norm(diff))
    if norm < 1e-12:
        raise ValueError("candidate equals the state; no witness direction exists")
    shift = np.trace(sigma.mat.conj().T @ diff).real
    c = (diff - shift * np.eye(rho.dim)) / norm
    mpe = min_product_expectation(Witness(c, rho.d1, rho.d2), seed=seed)
    return mpe >= -WITNESS_ATOL


def bnt_bounds(
    rho: DensityMatrix, omega: DensityMatrix, seed: int = 0
) -> tuple[float, float]:
    """Two-sided bounds on the Hilbert-Schmidt distance to the separable set.

    upper = ||omega - rho|| for the separable reference omega; lower is
    the witness value of the normalized direction A = (omega - rho)/upper:
    max(0, min_prod<ab|A|ab> - trace(rho A)).  The bounds coincide when
    omega is the actual closest separable state.
    """
    _check_same_dims(rho, omega)
    diff = omega.mat - rho.mat
    upper = float(np.linalg.norm(diff))
    if upper < 1e-12:
        return 0.0, 0.0
    a_op = diff / upper
    mpe = min_product_expectation(Witness(a_op, rho.d1, rho.d2), seed=seed)
    lower = max(0.0, mpe - float(np.trace(rho.mat @ a_op).real))
    if lower > upper + WITNESS_ATOL:
        raise ArithmeticError(f"lower bound {lower} exceeds upper bound {upper}")
    return lower, upper
