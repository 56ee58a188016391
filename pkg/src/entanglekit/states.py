"""Validated state types and constructors for the named state families.

A :class:`DensityMatrix` carries its bipartite split ``(d1, d2)`` and is
checked at construction: Hermitian (1e-8 relative), unit trace (1e-10)
and positive semidefinite (minimum eigenvalue >= -1e-10, overridable via
the ``ENTANGLEKIT_TOL`` environment variable).  Unipartite states use
``d2 = 1``.

The module also owns the JSON interchange format used by the command
line tools::

    {"d1": 2, "d2": 2, "matrix": [[[re, im], ...], ...]}

with the matrix stored row-major and every float written with 17
significant digits.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .linalg import partial_trace
from .tolerances import HERM_RTOL, TRACE_ATOL, psd_tol

__all__ = [
    "DensityMatrix",
    "PureState",
    "from_pure",
    "bell_state",
    "werner",
    "horodecki_3x3",
    "max_entangled",
    "random_density",
    "random_separable",
    "maximally_mixed",
    "load_state",
    "save_state",
    "state_to_json",
    "state_from_json",
]

BELL_LABELS = ("psi+", "psi-", "phi+", "phi-")


@dataclass
class DensityMatrix:
    """A bipartite density matrix together with its subsystem dimensions."""

    mat: np.ndarray
    d1: int
    d2: int

    def __post_init__(self) -> None:
        self.mat = np.asarray(self.mat, dtype=complex)
        n = self.d1 * self.d2
        if self.mat.shape != (n, n):
            raise ValueError(
                f"dimension mismatch: matrix is {self.mat.shape}, "
                f"expected {n}x{n} for a {self.d1}x{self.d2} split"
            )
        if not np.all(np.isfinite(self.mat)):
            raise ValueError("matrix entries must be finite")
        scale = np.linalg.norm(self.mat)
        if scale > 0 and np.linalg.norm(self.mat - self.mat.conj().T) > HERM_RTOL * scale:
            raise ValueError("matrix is not Hermitian within tolerance")
        tr = np.trace(self.mat)
        if abs(tr - 1.0) > TRACE_ATOL:
            raise ValueError(f"trace must be 1 (got {tr.real:.12g})")
        min_eig = float(np.linalg.eigvalsh((self.mat + self.mat.conj().T) / 2.0)[0])
        if min_eig < -psd_tol():
            raise ValueError(
                f"matrix is not positive semidefinite (min eigenvalue {min_eig:.3e})"
            )

    @property
    def dim(self) -> int:
        return self.d1 * self.d2

    def reduced(self, subsystem: str) -> np.ndarray:
        """Reduced matrix of subsystem 'A' or 'B' (traces out the other)."""
        other = "B" if subsystem == "A" else "A"
        return partial_trace(self.mat, self.d1, self.d2, subsystem=other)


@dataclass
class PureState:
    """State vector with a bipartite split; must have unit norm."""

    amplitudes: np.ndarray
    d1: int
    d2: int

    def __post_init__(self) -> None:
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if self.amplitudes.size != self.d1 * self.d2:
            raise ValueError(
                f"{self.amplitudes.size} amplitudes do not fit a "
                f"{self.d1}x{self.d2} system"
            )
        norm = np.linalg.norm(self.amplitudes)
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"state vector norm must be 1 (got {norm:.12g})")

    def amplitude_matrix(self) -> np.ndarray:
        """Amplitudes reshaped to d1 x d2 (rows = first subsystem)."""
        return self.amplitudes.reshape(self.d1, self.d2)


def from_pure(psi: PureState) -> DensityMatrix:
    """Projector |psi><psi| as a validated density matrix."""
    v = psi.amplitudes
    return DensityMatrix(np.outer(v, v.conj()), psi.d1, psi.d2)


def bell_state(which: str) -> PureState:
    """One of the four Bell states 'psi+', 'psi-', 'phi+', 'phi-'.

    psi+- = (|01> +- |10>)/sqrt2, phi+- = (|00> +- |11>)/sqrt2.
    """
    s = 1.0 / np.sqrt(2.0)
    vectors = {
        "psi+": [0.0, s, s, 0.0],
        "psi-": [0.0, s, -s, 0.0],
        "phi+": [s, 0.0, 0.0, s],
        "phi-": [s, 0.0, 0.0, -s],
    }
    key = which.lower()
    if key not in vectors:
        raise ValueError(f"unknown Bell label {which!r}; use one of {BELL_LABELS}")
    return PureState(np.array(vectors[key]), 2, 2)


def werner(F: float) -> DensityMatrix:
    """Werner state of purity F in the phi+ weighted form.

    F * |phi+><phi+| plus weight (1-F)/3 on each of the other three Bell
    projectors.  The psi- weighted form is obtained by the Bell rotation
    in the distillation module.
    """
    if not 0.0 <= F <= 1.0:
        raise ValueError(f"purity must lie in [0, 1], got {F}")
    rest = (1.0 - F) / 3.0
    mat = F * _bell_projector("phi+")
    for label in ("psi+", "psi-", "phi-"):
        mat = mat + rest * _bell_projector(label)
    return DensityMatrix(mat, 2, 2)


def _bell_projector(label: str) -> np.ndarray:
    v = bell_state(label).amplitudes
    return np.outer(v, v.conj())


def horodecki_3x3(a: float) -> DensityMatrix:
    """The bound-entangled two-qutrit family, parameterized by a in (0, 1).

    PPT for every a yet entangled; normalization 1/(8a+1).
    """
    if not 0.0 < a < 1.0:
        raise ValueError(f"parameter must lie strictly inside (0, 1), got {a}")
    m = np.zeros((9, 9))
    for i in (0, 4, 8):
        for j in (0, 4, 8):
            m[i, j] = a
    for i in (1, 2, 3, 5, 7):
        m[i, i] = a
    m[6, 6] = m[8, 8] = (1.0 + a) / 2.0
    m[6, 8] = m[8, 6] = np.sqrt(1.0 - a * a) / 2.0
    return DensityMatrix(m / (8.0 * a + 1.0), 3, 3)


def max_entangled(d: int) -> PureState:
    """(1/sqrt d) sum_i |ii>, the canonical maximally entangled state."""
    if d < 2:
        raise ValueError(f"need subsystem dimension >= 2, got {d}")
    v = np.zeros(d * d, dtype=complex)
    v[:: d + 1] = 1.0 / np.sqrt(d)
    return PureState(v, d, d)


def maximally_mixed(d1: int, d2: int = 1) -> DensityMatrix:
    """Identity / (d1*d2)."""
    n = d1 * d2
    return DensityMatrix(np.eye(n) / n, d1, d2)


def random_density(d1: int, d2: int, rank: int, seed: int) -> DensityMatrix:
    """Seeded pseudo-random density matrix of the given rank.

    Ginibre construction: rho = G G^dagger / trace with G a complex
    Gaussian (d1*d2) x rank factor.  Identical seeds reproduce identical
    matrices bit for bit.
    """
    n = d1 * d2
    if not 1 <= rank <= n:
        raise ValueError(f"rank must lie in [1, {n}], got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real, d1, d2)


def random_separable(d1: int, d2: int, n_terms: int, seed: int) -> DensityMatrix:
    """Seeded convex mixture of random pure product states (separable)."""
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(n_terms))
    mat = np.zeros((d1 * d2, d1 * d2), dtype=complex)
    for w in weights:
        a = rng.standard_normal(d1) + 1j * rng.standard_normal(d1)
        b = rng.standard_normal(d2) + 1j * rng.standard_normal(d2)
        v = np.kron(a / np.linalg.norm(a), b / np.linalg.norm(b))
        mat += w * np.outer(v, v.conj())
    return DensityMatrix(mat, d1, d2)


# --- JSON interchange -------------------------------------------------

def _g17(x: float) -> str:
    return f"{x:.17g}"


def state_to_json(rho: DensityMatrix) -> str:
    """Serialize with full (17 significant digit) float precision."""
    rows = []
    for row in rho.mat:
        cells = ", ".join(f"[{_g17(z.real)}, {_g17(z.imag)}]" for z in row)
        rows.append(f"    [{cells}]")
    body = ",\n".join(rows)
    return (
        "{\n"
        f'  "d1": {rho.d1},\n'
        f'  "d2": {rho.d2},\n'
        '  "matrix": [\n'
        f"{body}\n"
        "  ]\n"
        "}\n"
    )


def state_from_json(text: str) -> DensityMatrix:
    doc = json.loads(text)
    try:
        d1 = int(doc["d1"])
        d2 = int(doc["d2"])
        raw = doc["matrix"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"state file must define d1, d2 and matrix: {exc}") from exc
    mat = np.array([[complex(re, im) for re, im in row] for row in raw])
    return DensityMatrix(mat, d1, d2)


def save_state(rho: DensityMatrix, path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(state_to_json(rho))


def load_state(path) -> DensityMatrix:
    with open(path) as fh:
        return state_from_json(fh.read())
