"""Dense complex linear algebra on bipartite operators.

Everything here works on plain ``numpy.ndarray`` matrices; the validated
state types live in :mod:`entanglekit.states`.  Eigenvalues are sorted in
descending order throughout the package and eigenvector phases are fixed
(first nonvanishing component made real and positive) so that repeated
runs produce identical output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tolerances import HERM_RTOL

__all__ = [
    "HermitianEigensystem",
    "tensor",
    "partial_trace",
    "partial_transpose",
    "realign",
    "schatten_norm",
    "eig_hermitian",
    "herm_function",
]


@dataclass(frozen=True)
class HermitianEigensystem:
    """Spectral data of a Hermitian matrix.

    Attributes
    ----------
    eigenvalues : ndarray
        Real eigenvalues, sorted descending.
    eigenvectors : ndarray
        Orthonormal eigenvectors as columns, ordered like the eigenvalues,
        with the first nonvanishing component of each column made real
        and positive.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def tensor(*ops: np.ndarray) -> np.ndarray:
    """Kronecker product of one or more square matrices."""
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op, dtype=complex))
    return out


def _as_bipartite(rho: np.ndarray, d1: int, d2: int) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (d1 * d2, d1 * d2):
        raise ValueError(
            f"matrix shape {rho.shape} does not match dimensions {d1}x{d2}"
        )
    return rho.reshape(d1, d2, d1, d2)


def partial_trace(rho: np.ndarray, d1: int, d2: int, subsystem: str = "B") -> np.ndarray:
    """Trace out one subsystem of a (d1*d2)-dimensional operator.

    ``subsystem`` names the part that is discarded: tracing ``"B"`` leaves
    the d1-dimensional reduction, tracing ``"A"`` the d2-dimensional one.
    """
    r = _as_bipartite(rho, d1, d2)
    if subsystem == "B":
        return np.einsum("ikjk->ij", r)
    if subsystem == "A":
        return np.einsum("kikj->ij", r)
    raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")


def partial_transpose(rho: np.ndarray, d1: int, d2: int, subsystem: str = "A") -> np.ndarray:
    """Transpose the indices of one subsystem only.

    Applying the operation twice restores the input; transposing A and
    then B equals the full transpose.
    """
    r = _as_bipartite(rho, d1, d2)
    if subsystem == "A":
        out = r.transpose(2, 1, 0, 3)
    elif subsystem == "B":
        out = r.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return out.reshape(d1 * d2, d1 * d2)


def realign(rho: np.ndarray, d1: int, d2: int) -> np.ndarray:
    """Realigned matrix R with R[(i,j),(k,l)] = <i,k|rho|j,l>.

    Output shape is d1^2 x d2^2 (square only when d1 == d2); the result
    is in general not Hermitian.  Separable states obey ||R||_1 <= 1.
    """
    r = _as_bipartite(rho, d1, d2)  # axes (i, k, j, l)
    return r.transpose(0, 2, 1, 3).reshape(d1 * d1, d2 * d2)


def schatten_norm(a: np.ndarray, n: float) -> float:
    """Schatten n-norm: the l_n norm of the singular value vector.

    n=1 is the trace norm, n=2 the Hilbert-Schmidt norm.
    """
    if n < 1:
        raise ValueError(f"Schatten order must be >= 1, got {n}")
    s = np.linalg.svd(np.asarray(a, dtype=complex), compute_uv=False)
    return float(np.sum(s**n) ** (1.0 / n))


def eig_hermitian(a: np.ndarray) -> HermitianEigensystem:
    """Eigendecomposition of a Hermitian matrix, descending and phase-fixed.

    The input is symmetrized before decomposing; deviations from
    Hermiticity beyond ``HERM_RTOL`` (relative) raise ``ValueError``.
    """
    a = np.asarray(a, dtype=complex)
    scale = np.linalg.norm(a)
    if scale > 0 and np.linalg.norm(a - a.conj().T) > HERM_RTOL * scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    vals, vecs = np.linalg.eigh((a + a.conj().T) / 2.0)
    order = np.argsort(vals)[::-1]  # descending, stable for exact ties
    vals = vals[order]
    vecs = vecs[:, order]
    for j in range(vecs.shape[1]):
        col = vecs[:, j]
        nz = np.flatnonzero(np.abs(col) > 1e-12)
        if nz.size:
            pivot = col[nz[0]]
            vecs[:, j] = col * (pivot.conjugate() / abs(pivot))
    return HermitianEigensystem(eigenvalues=vals, eigenvectors=vecs)


def herm_function(a: np.ndarray, f) -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix via its spectrum.

    ``f`` must be defined (and finite) on every eigenvalue; the result is
    V f(Lambda) V^dagger.
    """
    eig = eig_hermitian(a)
    fvals = np.asarray([f(v) for v in eig.eigenvalues], dtype=float)
    if not np.all(np.isfinite(fvals)):
        raise ValueError("function undefined on part of the spectrum")
    v = eig.eigenvectors
    return (v * fvals) @ v.conj().T
