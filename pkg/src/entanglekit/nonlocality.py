"""Bell-inequality tools: CHSH, CGLMP, Bell witnesses, local filtering.

The CHSH maximum over measurement directions has the closed form
2 sqrt(u1 + u2) with u1, u2 the two largest eigenvalues of T^t T, where
T is the correlation matrix; ``optimal_chsh_settings`` reconstructs
directions attaining it.  ``apply_filter`` implements the local-filter
trick that reveals hidden nonlocality: states with chsh_max <= 2 whose
filtered versions violate the inequality.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .bases import correlation_tensor, pauli
from .geometry import Witness
from .linalg import partial_transpose
from .states import DensityMatrix, from_pure, max_entangled

__all__ = [
    "ChshSettings",
    "ProbabilityTable",
    "LocalFilter",
    "chsh_value",
    "chsh_max",
    "optimal_chsh_settings",
    "bell_operator_chsh",
    "witness_from_bell",
    "jamiolkowski_witness",
    "probability_table",
    "cglmp_value",
    "lhv_deterministic_max",
    "apply_filter",
    "hidden_nonlocality_state",
    "hidden_nonlocality_filter",
]


def _unit3(v, name: str) -> np.ndarray:
    arr = np.asarray(v, dtype=float).reshape(-1)
    if arr.size != 3 or abs(np.linalg.norm(arr) - 1.0) > 1e-10:
        raise ValueError(f"{name} must be a unit 3-vector")
    return arr


@dataclass
class ChshSettings:
    """Two measurement directions per side, each a unit vector in R^3."""

    a1: np.ndarray
    a2: np.ndarray
    b1: np.ndarray
    b2: np.ndarray

    def __post_init__(self) -> None:
        self.a1 = _unit3(self.a1, "a1")
        self.a2 = _unit3(self.a2, "a2")
        self.b1 = _unit3(self.b1, "b1")
        self.b2 = _unit3(self.b2, "b2")


def _dot_sigma(v: np.ndarray) -> np.ndarray:
    return v[0] * pauli(1) + v[1] * pauli(2) + v[2] * pauli(3)


def _correlation(rho: DensityMatrix, a: np.ndarray, b: np.ndarray) -> float:
    return float(np.trace(rho.mat @ np.kron(_dot_sigma(a), _dot_sigma(b))).real)


def chsh_value(rho: DensityMatrix, s: ChshSettings) -> float:
    """|E(a1,b1) - E(a1,b2)| + |E(a2,b2) + E(a2,b1)| for the given settings."""
    if (rho.d1, rho.d2) != (2, 2):
        raise ValueError(f"CHSH needs a 2x2 state, got {rho.d1}x{rho.d2}")
    e11 = _correlation(rho, s.a1, s.b1)
    e12 = _correlation(rho, s.a1, s.b2)
    e21 = _correlation(rho, s.a2, s.b1)
    e22 = _correlation(rho, s.a2, s.b2)
    return abs(e11 - e12) + abs(e22 + e21)


def chsh_max(rho: DensityMatrix) -> float:
    """2 sqrt(u1 + u2) over the two top eigenvalues of T^t T."""
    t = correlation_tensor(rho).t
    u = np.sort(np.linalg.eigvalsh(t.T @ t))[::-1]
    return 2.0 * float(np.sqrt(max(u[0] + u[1], 0.0)))


def optimal_chsh_settings(rho: DensityMatrix) -> ChshSettings:
    """Directions achieving chsh_max.

    With c1, c2 the top eigenvectors of T^t T, Bob measures along
    cos(phi) c1 +- sin(phi) c2 with tan(phi) = ||T c2||/||T c1||, and
    Alice along the images T c2, T c1 (normalized).  Degenerate zero
    images fall back to the eigenvectors themselves; the value is 0
    along such directions anyway.
    """
    t = correlation_tensor(rho).t
    _, vecs = np.linalg.eigh(t.T @ t)
    c1, c2 = vecs[:, 2], vecs[:, 1]
    tc1, tc2 = t @ c1, t @ c2
    n1, n2 = np.linalg.norm(tc1), np.linalg.norm(tc2)
    phi = np.arctan2(n2, n1)
    b1 = np.cos(phi) * c1 + np.sin(phi) * c2
    b2 = np.cos(phi) * c1 - np.sin(phi) * c2
    a1 = tc2 / n2 if n2 > 1e-12 else c2
    a2 = tc1 / n1 if n1 > 1e-12 else c1
    return ChshSettings(a1, a2, b1 / np.linalg.norm(b1), b2 / np.linalg.norm(b2))


def bell_operator_chsh(s: ChshSettings) -> np.ndarray:
    """B = a1.sigma x (b1 - b2).sigma + a2.sigma x (b1 + b2).sigma.

    The pairing matches chsh_value: trace(rho B) is the sign-resolved
    combination (E11 - E12) + (E22 + E21), so the settings returned by
    optimal_chsh_settings reach trace(rho B) = chsh_max(rho).
    """
    return np.kron(_dot_sigma(s.a1), _dot_sigma(s.b1 - s.b2)) + np.kron(
        _dot_sigma(s.a2), _dot_sigma(s.b1 + s.b2)
    )


def witness_from_bell(b: np.ndarray) -> Witness:
    """W = 2I - B: nonnegative on local (hence all separable) states."""
    b = np.asarray(b, dtype=complex)
    if np.linalg.norm(b - b.conj().T) > 1e-8 * max(np.linalg.norm(b), 1.0):
        raise ValueError("Bell operator must be Hermitian")
    return Witness(2.0 * np.eye(4) - b, 2, 2)


def jamiolkowski_witness(map_tag: str, d: int) -> Witness:
    """Witness of a positive non-CP map Lambda: (Lambda x I) |Omega><Omega|.

    Only transposition is implemented; the result is the swap operator
    divided by d, negative on the maximally entangled state but
    nonnegative on every product state.
    """
    if map_tag != "transposition":
        raise ValueError(f"unsupported map tag {map_tag!r}; only 'transposition'")
    omega = from_pure(max_entangled(d))
    return Witness(partial_transpose(omega.mat, d, d, subsystem="A"), d, d)


@dataclass
class ProbabilityTable:
    """p[i, j, a, b]: outcome probabilities for setting pair (i+1, j+1)."""

    d: int
    p: np.ndarray

    def __post_init__(self) -> None:
        self.p = np.asarray(self.p, dtype=float)
        if self.p.shape != (2, 2, self.d, self.d):
            raise ValueError(
                f"table shape {self.p.shape} does not match (2, 2, {self.d}, {self.d})"
            )
        if np.any(self.p < -1e-12):
            raise ValueError("probabilities must be nonnegative")
        sums = self.p.sum(axis=(2, 3))
        if np.any(np.abs(sums - 1.0) > 1e-9):
            raise ValueError("each setting pair must sum to 1")


def probability_table(rho: DensityMatrix, bases_a, bases_b) -> ProbabilityTable:
    """Joint outcome table for two projective measurements per side.

    ``bases_a`` and ``bases_b`` each hold two d x d matrices whose
    columns are the orthonormal measurement vectors.
    """
    if rho.d1 != rho.d2:
        raise ValueError("probability tables need equal subsystem dimensions")
    d = rho.d1
    for name, pair in (("A", bases_a), ("B", bases_b)):
        for basis in pair:
            basis = np.asarray(basis)
            if basis.shape != (d, d) or np.linalg.norm(
                basis.conj().T @ basis - np.eye(d)
            ) > 1e-10:
                raise ValueError(f"side-{name} basis is not orthonormal")
    p = np.empty((2, 2, d, d))
    for i, ua in enumerate(bases_a):
        for j, ub in enumerate(bases_b):
            for a in range(d):
                for b in range(d):
                    v = np.kron(np.asarray(ua)[:, a], np.asarray(ub)[:, b])
                    p[i, j, a, b] = (v.conj() @ rho.mat @ v).real
    return ProbabilityTable(d, np.clip(p, 0.0, None))


def _joint(t: ProbabilityTable, i: int, j: int, shift: int, b_shifted: bool) -> float:
    """P(A_i = B_j + shift) or P(B_j = A_i + shift), arguments mod d."""
    d = t.d
    total = 0.0
    for m in range(d):
        if b_shifted:
            total += t.p[i, j, m, (m + shift) % d]  # B_j = A_i + shift
        else:
            total += t.p[i, j, (m + shift) % d, m]  # A_i = B_j + shift
    return total


def cglmp_value(t: ProbabilityTable) -> float:
    """The two-setting d-outcome Bell expression.

    For d = 2 the four-term positive form with classical bound 3 (an
    equivalent rewriting of CHSH); for d > 2 the alternating-sign sum
    over k < d/2 with classical bound 2.
    """
    if t.d == 2:
        return (
            _joint(t, 0, 0, 0, False)
            + _joint(t, 1, 0, 1, True)
            + _joint(t, 1, 1, 0, False)
            + _joint(t, 0, 1, 0, True)
        )
    value = 0.0
    for k in range(t.d // 2):
        value += (
            _joint(t, 0, 0, k, False)
            + _joint(t, 1, 0, k + 1, True)
            + _joint(t, 1, 1, k, False)
            + _joint(t, 0, 1, k, True)
        )
        value -= (
            _joint(t, 0, 0, -k - 1, False)
            + _joint(t, 1, 0, -k, True)
            + _joint(t, 1, 1, -k - 1, False)
            + _joint(t, 0, 1, -k - 1, True)
        )
    return value


def lhv_deterministic_max() -> float:
    """Best d = 2 table value over all 16 deterministic local strategies."""
    best = -np.inf
    for a1, a2, b1, b2 in product(range(2), repeat=4):
        p = np.zeros((2, 2, 2, 2))
        outcomes_a = (a1, a2)
        outcomes_b = (b1, b2)
        for i in range(2):
            for j in range(2):
                p[i, j, outcomes_a[i], outcomes_b[j]] = 1.0
        best = max(best, cglmp_value(ProbabilityTable(2, p)))
    return best


@dataclass
class LocalFilter:
    """Non-unitary local operation (fA x fB), applied with renormalization."""

    fA: np.ndarray
    fB: np.ndarray

    def __post_init__(self) -> None:
        self.fA = np.asarray(self.fA, dtype=complex)
        self.fB = np.asarray(self.fB, dtype=complex)
        if self.fA.shape != (2, 2) or self.fB.shape != (2, 2):
            raise ValueError("filters act on single qubits (2x2 matrices)")
        if not (np.all(np.isfinite(self.fA)) and np.all(np.isfinite(self.fB))):
            raise ValueError("filter entries must be finite")


def apply_filter(rho: DensityMatrix, f: LocalFilter) -> DensityMatrix:
    """(fA x fB) rho (fA x fB)^dagger, renormalized to unit trace."""
    if (rho.d1, rho.d2) != (2, 2):
        raise ValueError(f"filters are two-qubit operations, got {rho.d1}x{rho.d2}")
    k = np.kron(f.fA, f.fB)
    out = k @ rho.mat @ k.conj().T
    tr = float(np.trace(out).real)
    if tr <= 1e-12:
        raise ValueError("filter annihilates the state (post-filter trace ~ 0)")
    return DensityMatrix(out / tr, 2, 2)


def hidden_nonlocality_state(lam: float, alpha: float) -> DensityMatrix:
    """lam |psi_alpha><psi_alpha| + (1-lam)/2 (|00><00| + |11><11|).

    psi_alpha = alpha|01> + beta|10> with beta = sqrt(1 - alpha^2).  For
    suitable parameters (e.g. lam = 0.9, alpha*beta = 0.2) the state
    satisfies the CHSH bound, while its locally filtered version
    violates it.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError("mixing weight must lie in [0, 1]")
    if not 0.0 < alpha < 1.0:
        raise ValueError("amplitude must lie strictly inside (0, 1)")
    beta = np.sqrt(1.0 - alpha * alpha)
    psi = np.array([0.0, alpha, beta, 0.0])
    mat = lam * np.outer(psi, psi)
    mat[0, 0] += (1.0 - lam) / 2.0
    mat[3, 3] += (1.0 - lam) / 2.0
    return DensityMatrix(mat, 2, 2)


def hidden_nonlocality_filter(alpha: float) -> LocalFilter:
    """The polarization filters diag(sqrt(beta/alpha), 1), diag(1, sqrt(beta/alpha)).

    Applied to ``hidden_nonlocality_state(lam, alpha)`` they concentrate
    the psi_alpha component onto a symmetric Bell fraction of weight
    2 lam alpha beta / (2 lam alpha beta + 1 - lam).
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("amplitude must lie strictly inside (0, 1)")
    beta = np.sqrt(1.0 - alpha * alpha)
    r = np.sqrt(beta / alpha)
    return LocalFilter(np.diag([r, 1.0]), np.diag([1.0, r]))
