"""Magic simplices: Bell-diagonal 2x2 states and the Weyl-generated 3x3 family.

The 3x3 simplex is spanned by the nine projectors onto
|Omega_{k,l}> = (W_{k,l} x I)|Omega_{0,0}>, mutually orthogonal
maximally entangled two-qutrit states indexed by the phase-space points
(k, l) of the 3x3 integer grid.  Twelve affine lines (four directions,
three offsets) structure the grid; mixtures along a line contain no
bound entanglement, while pseudomixtures over non-collinear point
triples do.

``scan_region`` grids a three-parameter family and reports
positivity/PPT/CCN per cell; everything in the simplex is diagonal in
the Omega basis, so validity reduces to weight nonnegativity and the
partial transpose and realignment are linear in the weights — the scan
evaluates them in stacked batches.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bases import weyl
from .criteria import verdict_from_flags
from .linalg import partial_transpose, realign
from .states import DensityMatrix, PureState, bell_state, max_entangled
from .tolerances import CCN_EXCESS, PSD_ATOL

__all__ = [
    "SimplexPoint2x2",
    "SimplexPoint3x3",
    "Line3x3",
    "RegionCell",
    "bell_diagonal",
    "omega3",
    "simplex3_state",
    "lines3",
    "sigma_out",
    "family_line",
    "family_offline",
    "scan_region",
    "region_csv",
    "DEFAULT_OFFLINE_POINTS",
]

_WEIGHT_FLOOR = -1e-12

DEFAULT_OFFLINE_POINTS = ((1, 0), (2, 0), (1, 1))


@dataclass
class SimplexPoint2x2:
    """Mixing weights over the Bell projectors (psi+, psi-, phi+, phi-)."""

    weights: np.ndarray

    def __post_init__(self) -> None:
        self.weights = np.asarray(self.weights, dtype=float).reshape(-1)
        if self.weights.size != 4:
            raise ValueError("need exactly four Bell weights")
        if abs(self.weights.sum() - 1.0) > 1e-12:
            raise ValueError("Bell weights must sum to 1")


@dataclass
class SimplexPoint3x3:
    """Mixing weights c[k, l] over the nine Omega projectors."""

    weights: np.ndarray

    def __post_init__(self) -> None:
        self.weights = np.asarray(self.weights, dtype=float).reshape(3, 3)
        if abs(self.weights.sum() - 1.0) > 1e-12:
            raise ValueError("simplex weights must sum to 1")


def _bell_projectors() -> np.ndarray:
    vs = [bell_state(lbl).amplitudes for lbl in ("psi+", "psi-", "phi+", "phi-")]
    return np.stack([np.outer(v, v.conj()) for v in vs])


_P_BELL = _bell_projectors()


def bell_diagonal(p: SimplexPoint2x2) -> DensityMatrix | None:
    """sum a_i P_i over the Bell projectors; None for non-PSD pseudomixtures.

    Valid states are exactly the weight-nonnegative points (the
    projectors are orthogonal); among them the PPT ones form the
    octahedron max a_i <= 1/2.
    """
    if p.weights.min() < _WEIGHT_FLOOR:
        return None
    mat = np.tensordot(p.weights, _P_BELL, axes=1)
    return DensityMatrix(mat, 2, 2)


def omega3(k: int, l: int) -> PureState:
    """(W_{k,l} x I)|Omega_{0,0}>: the nine orthogonal 3x3 simplex vertices."""
    if not (0 <= k < 3 and 0 <= l < 3):
        raise ValueError(f"indices must lie in {{0,1,2}}, got ({k}, {l})")
    base = max_entangled(3).amplitudes
    return PureState(np.kron(weyl(3, k, l), np.eye(3)) @ base, 3, 3)


def _omega_projectors() -> np.ndarray:
    out = []
    for k in range(3):
        for l in range(3):
            v = omega3(k, l).amplitudes
            out.append(np.outer(v, v.conj()))
    return np.stack(out)


_P3 = _omega_projectors()
_PT3 = np.stack([partial_transpose(p, 3, 3, subsystem="A") for p in _P3])
_R3 = np.stack([realign(p, 3, 3) for p in _P3])


def simplex3_state(c: SimplexPoint3x3) -> DensityMatrix | None:
    """sum c_{k,l} P_{k,l}; None if the weight vector is not PSD-compatible."""
    w = c.weights.reshape(-1)
    if w.min() < _WEIGHT_FLOOR:
        return None
    return DensityMatrix(np.tensordot(w, _P3, axes=1), 3, 3)


@dataclass(frozen=True)
class Line3x3:
    """Three collinear points of the 3x3 phase-space grid (mod-3 affine line)."""

    points: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]

    def __post_init__(self) -> None:
        pts = self.points
        if len(set(pts)) != 3 or any(not (0 <= k < 3 and 0 <= l < 3) for k, l in pts):
            raise ValueError("a line needs three distinct grid points")
        (k1, l1), (k2, l2), (k3, l3) = pts
        cross = (k2 - k1) * (l3 - l1) - (l2 - l1) * (k3 - k1)
        if cross % 3 != 0:
            raise ValueError(f"points {pts} are not collinear mod 3")


def lines3() -> list[Line3x3]:
    """The 12 lines of the grid: directions (1,0), (0,1), (1,1), (1,2)."""
    out = []
    for l in range(3):
        out.append(Line3x3(((0, l), (1, l), (2, l))))
    for k in range(3):
        out.append(Line3x3(((k, 0), (k, 1), (k, 2))))
    for c in range(3):
        out.append(Line3x3(((0, c), (1, (c + 1) % 3), (2, (c + 2) % 3))))
    for c in range(3):
        out.append(Line3x3(((0, c), (1, (c + 2) % 3), (2, (c + 4) % 3))))
    return out


def sigma_out(line: Line3x3) -> DensityMatrix:
    """Uniform mixture over a line's projectors — separable for every line."""
    w = np.zeros(9)
    for k, l in line.points:
        w[3 * k + l] = 1.0 / 3.0
    return DensityMatrix(np.tensordot(w, _P3, axes=1), 3, 3)


def _family_weights(alpha: float, beta: float, gamma: float, points) -> np.ndarray:
    w = np.full(9, (1.0 - alpha - beta - gamma) / 9.0)
    for value, (k, l) in zip((alpha, beta, gamma), points):
        w[3 * k + l] += value
    return w


def family_line(
    alpha: float, beta: float, gamma: float, line: Line3x3 | None = None
) -> DensityMatrix | None:
    """((1-a-b-g)/9) I + a P1 + b P2 + g P3 along a line; None if not PSD."""
    if line is None:
        line = lines3()[0]
    w = _family_weights(alpha, beta, gamma, line.points)
    if w.min() < _WEIGHT_FLOOR:
        return None
    return DensityMatrix(np.tensordot(w, _P3, axes=1), 3, 3)


def family_offline(
    alpha: float, beta: float, gamma: float, p1=None, p2=None, p3=None
) -> DensityMatrix | None:
    """The same mixture over three non-collinear points (pseudomixtures allowed)."""
    pts = _offline_points(p1, p2, p3)
    w = _family_weights(alpha, beta, gamma, pts)
    if w.min() < _WEIGHT_FLOOR:
        return None
    return DensityMatrix(np.tensordot(w, _P3, axes=1), 3, 3)


def _offline_points(p1, p2, p3):
    if p1 is None and p2 is None and p3 is None:
        return DEFAULT_OFFLINE_POINTS
    pts = (tuple(p1), tuple(p2), tuple(p3))
    if len(set(pts)) != 3:
        raise ValueError("the three points must be pairwise distinct")
    (k1, l1), (k2, l2), (k3, l3) = pts
    if ((k2 - k1) * (l3 - l1) - (l2 - l1) * (k3 - k1)) % 3 == 0:
        raise ValueError(f"points {pts} are collinear; use family_line instead")
    return pts


@dataclass
class RegionCell:
    """One grid cell of a family scan; criteria fields only for valid states."""

    params: tuple[float, float, float]
    is_state: bool
    is_ppt: bool | None = None
    ccn_value: float | None = None
    ccn_flag: bool | None = None
    verdict: str | None = None


def _batched_min_eig(mats: np.ndarray, chunk: int = 4096) -> np.ndarray:
    out = np.empty(mats.shape[0])
    for start in range(0, mats.shape[0], chunk):
        block = mats[start : start + chunk]
        out[start : start + chunk] = np.linalg.eigvalsh(block)[:, 0]
    return out


def _batched_trace_norm(mats: np.ndarray, chunk: int = 4096) -> np.ndarray:
    out = np.empty(mats.shape[0])
    for start in range(0, mats.shape[0], chunk):
        block = mats[start : start + chunk]
        out[start : start + chunk] = np.linalg.svd(block, compute_uv=False).sum(axis=1)
    return out


def scan_region(
    family: str,
    grid: int,
    gamma: float | None = None,
    *,
    line: Line3x3 | None = None,
    points=None,
    alpha_range: tuple[float, float] | None = None,
    beta_range: tuple[float, float] | None = None,
    gamma_range: tuple[float, float] | None = None,
) -> list[RegionCell]:
    """Grid scan of a simplex family, lexicographic in (alpha, beta, gamma).

    ``gamma=None`` scans a full 3D grid, otherwise a fixed-gamma slice.
    Line scans default to the nonnegative-mixture cube [0,1]^3; off-line
    scans default to a window reaching into the pseudomixture region
    where PPT-entangled cells appear.
    """
    if grid < 2:
        raise ValueError("grid resolution must be at least 2 per axis")
    if family == "line":
        pts = (line or lines3()[0]).points
        default_range = (0.0, 1.0)
    elif family == "offline":
        pts = _offline_points(*(points or (None, None, None)))
        # Window enclosing the PPT-entangled pocket of the default point
        # triple; grids of 30+ points per axis resolve it.
        default_range = (-0.1, 0.25)
    else:
        raise ValueError(f"unknown family {family!r}; use 'line' or 'offline'")
    a_lo, a_hi = alpha_range or default_range
    b_lo, b_hi = beta_range or default_range
    g_lo, g_hi = gamma_range or default_range

    alphas = np.linspace(a_lo, a_hi, grid)
    betas = np.linspace(b_lo, b_hi, grid)
    gammas = np.array([gamma]) if gamma is not None else np.linspace(g_lo, g_hi, grid)
    aa, bb, gg = np.meshgrid(alphas, betas, gammas, indexing="ij")
    params = np.stack([aa.ravel(), bb.ravel(), gg.ravel()], axis=1)

    idx = [3 * k + l for k, l in pts]
    weights = np.repeat(
        ((1.0 - params.sum(axis=1)) / 9.0)[:, None], 9, axis=1
    )
    for col, j in enumerate(idx):
        weights[:, j] += params[:, col]

    is_state = weights.min(axis=1) >= _WEIGHT_FLOOR
    n = params.shape[0]
    is_ppt = np.zeros(n, dtype=bool)
    ccn_value = np.full(n, np.nan)

    state_idx = np.nonzero(is_state)[0]
    if state_idx.size:
        w_states = weights[state_idx]
        pt_mats = (w_states @ _PT3.reshape(9, 81)).reshape(-1, 9, 9)
        is_ppt[state_idx] = _batched_min_eig(pt_mats) >= -PSD_ATOL
        r_mats = (w_states @ _R3.reshape(9, 81)).reshape(-1, 9, 9)
        ccn_value[state_idx] = _batched_trace_norm(r_mats)

    # Both reductions of any simplex member equal I/3, so the reduction
    # criterion degenerates to max weight <= 1/3 in the Omega eigenbasis.
    reduction_violated = weights.max(axis=1) > 1.0 / 3.0 + PSD_ATOL

    cells = []
    for i in range(n):
        p_tuple = (float(params[i, 0]), float(params[i, 1]), float(params[i, 2]))
        if not is_state[i]:
            cells.append(RegionCell(p_tuple, False))
            continue
        flag = bool(ccn_value[i] > 1.0 + CCN_EXCESS)
        cells.append(
            RegionCell(
                p_tuple,
                True,
                is_ppt=bool(is_ppt[i]),
                ccn_value=float(ccn_value[i]),
                ccn_flag=flag,
                verdict=verdict_from_flags(
                    3, 3, bool(is_ppt[i]), bool(reduction_violated[i]), flag
                ),
            )
        )
    return cells


def region_csv(cells: list[RegionCell]) -> str:
    """CSV rows in scan order: params, validity, PPT, CCN value, verdict."""
    lines = ["alpha,beta,gamma,is_state,is_ppt,ccn_value,verdict"]
    for cell in cells:
        a, b, g = cell.params
        if cell.is_state:
            tail = (
                f"true,{'true' if cell.is_ppt else 'false'},"
                f"{cell.ccn_value:.17g},{cell.verdict}"
            )
        else:
            tail = "false,,,"
        lines.append(f"{a:.17g},{b:.17g},{g:.17g},{tail}")
    return "\n".join(lines) + "\n"
