"""Operator bases (Pauli, generalized Gell-Mann, Weyl) and Bloch vectors.

Hermitian bases are normalized to trace(G_i G_j) = 2 delta_ij, so a
unipartite state decomposes as rho = I/d + sum_i b_i G_i with
b_i = trace(rho G_i)/2.  The Weyl basis is unitary rather than
Hermitian; its coefficients are complex and extracted as
b_i = trace(W_i^dagger rho)/d with the same additive reconstruction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import DensityMatrix

__all__ = [
    "BlochVector",
    "CorrelationTensor2x2",
    "pauli",
    "gell_mann",
    "weyl",
    "weyl_index_order",
    "bloch_decompose",
    "bloch_reconstruct",
    "correlation_tensor",
]

_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def pauli(i: int) -> np.ndarray:
    """Pauli matrix sigma_i for i in {1, 2, 3}."""
    if i not in (1, 2, 3):
        raise ValueError(f"Pauli index must be 1, 2 or 3, got {i}")
    return _PAULI[i - 1].copy()


def gell_mann(d: int) -> list[np.ndarray]:
    """The d^2 - 1 generalized Gell-Mann matrices for dimension d.

    Order: symmetric pairs (j, k) lexicographically, then antisymmetric
    pairs, then the d - 1 diagonal matrices.  All Hermitian, traceless,
    trace(G_i G_j) = 2 delta_ij; for d = 2 these are the Pauli matrices.
    """
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    out: list[np.ndarray] = []
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = m[k, j] = 1.0
            out.append(m)
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = -1j
            m[k, j] = 1j
            out.append(m)
    for l in range(1, d):
        m = np.zeros((d, d), dtype=complex)
        m[np.arange(l), np.arange(l)] = 1.0
        m[l, l] = -float(l)
        out.append(np.sqrt(2.0 / (l * (l + 1))) * m)
    return out


def weyl(d: int, m: int, n: int) -> np.ndarray:
    """Weyl operator W_{m,n} = sum_k exp(2 pi i k m / d) |k><k+n mod d|.

    W_{0,0} is the identity; for d = 2 the four operators are
    I, sigma_1, sigma_3 and i*sigma_2 at (0,0), (0,1), (1,0), (1,1).
    """
    if not (0 <= m < d and 0 <= n < d):
        raise ValueError(f"Weyl indices must lie in [0, {d - 1}], got ({m}, {n})")
    k = np.arange(d)
    w = np.zeros((d, d), dtype=complex)
    w[k, (k + n) % d] = np.exp(2j * np.pi * k * m / d)
    return w


def weyl_index_order(d: int) -> list[tuple[int, int]]:
    """(m, n) pairs in the coefficient order used by bloch_decompose."""
    return [(m, n) for m in range(d) for n in range(d) if (m, n) != (0, 0)]


@dataclass
class BlochVector:
    """Expansion coefficients of a state over one of the operator bases."""

    coefficients: np.ndarray
    basis_tag: str

    def __post_init__(self) -> None:
        self.coefficients = np.asarray(self.coefficients).reshape(-1)
        d = round(np.sqrt(self.coefficients.size + 1))
        if d * d - 1 != self.coefficients.size:
            raise ValueError(
                f"coefficient count {self.coefficients.size} is not d^2 - 1 "
                "for any integer d"
            )

    @property
    def d(self) -> int:
        return round(np.sqrt(self.coefficients.size + 1))


def _basis_matrices(d: int, basis_tag: str) -> list[np.ndarray]:
    if basis_tag == "pauli":
        if d != 2:
            raise ValueError("pauli basis requires d == 2")
        return [pauli(i) for i in (1, 2, 3)]
    if basis_tag == "gellmann":
        return gell_mann(d)
    if basis_tag == "weyl":
        return [weyl(d, m, n) for m, n in weyl_index_order(d)]
    raise ValueError(f"unknown basis tag {basis_tag!r}")


def bloch_decompose(rho: DensityMatrix, basis: str = "gellmann") -> BlochVector:
    """Bloch vector of a unipartite state: rho = I/d + sum_i b_i G_i.

    Hermitian bases give real b_i = trace(rho G_i)/2; the Weyl basis
    gives complex b_i = trace(W_i^dagger rho)/d.
    """
    if rho.d2 != 1:
        raise ValueError("bloch_decompose expects a unipartite state (d2 == 1)")
    d = rho.d1
    mats = _basis_matrices(d, basis)
    if basis == "weyl":
        coeffs = np.array([np.trace(w.conj().T @ rho.mat) / d for w in mats])
    else:
        coeffs = np.array([np.trace(rho.mat @ g).real / 2.0 for g in mats])
    return BlochVector(coeffs, basis)


def bloch_reconstruct(bv: BlochVector) -> np.ndarray:
    """Matrix I/d + sum_i b_i G_i for the vector's basis (inverse of decompose)."""
    d = bv.d
    mats = _basis_matrices(d, bv.basis_tag)
    out = np.eye(d, dtype=complex) / d
    for c, g in zip(bv.coefficients, mats):
        out += c * g
    return out


@dataclass
class CorrelationTensor2x2:
    """Local Bloch vectors a, b and correlation matrix t of a 2x2 state."""

    a: np.ndarray
    b: np.ndarray
    t: np.ndarray


def correlation_tensor(rho: DensityMatrix) -> CorrelationTensor2x2:
    """a_m = tr(rho sigma_m x I), b_n = tr(rho I x sigma_n), t_mn = tr(rho sigma_m x sigma_n).

    The state reconstructs as
    (1/4)(I + a.sigma x I + I x b.sigma + sum t_mn sigma_m x sigma_n).
    """
    if (rho.d1, rho.d2) != (2, 2):
        raise ValueError(f"correlation tensor needs a 2x2 system, got {rho.d1}x{rho.d2}")
    eye = np.eye(2)
    a = np.array([np.trace(rho.mat @ np.kron(pauli(m), eye)).real for m in (1, 2, 3)])
    b = np.array([np.trace(rho.mat @ np.kron(eye, pauli(n))).real for n in (1, 2, 3)])
    t = np.array(
        [
            [np.trace(rho.mat @ np.kron(pauli(m), pauli(n))).real for n in (1, 2, 3)]
            for m in (1, 2, 3)
        ]
    )
    return CorrelationTensor2x2(a, b, t)
