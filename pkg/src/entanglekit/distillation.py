"""Recurrence distillation of two-qubit pairs (twirl, XOR, measure, keep).

``bbpssw_purity_step`` is the analytic purity map

    F' = (F^2 + (1-F)^2/9) / (F^2 + 2F(1-F)/3 + 5(1-F)^2/9)

with the denominator as success probability; ``bbpssw_two_copy`` is the
exact 16x16 two-pair gate simulation of the same protocol step, and the
two must agree to 1e-10 — that equivalence is the module's self-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .criteria import is_ppt, reduction_check
from .linalg import partial_trace
from .states import DensityMatrix, bell_state, werner

__all__ = [
    "DistillationTrace",
    "twirl_fidelity",
    "rotate_bell",
    "bbpssw_purity_step",
    "bbpssw_two_copy",
    "iterate_distill",
    "distillability_flags",
]

# pi-rotation about y on one side: swaps the psi-/phi+ and psi+/phi-
# Bell weights (projectively involutive).
_ROT = np.kron(np.array([[0.0, -1.0], [1.0, 0.0]]), np.eye(2))


def twirl_fidelity(rho: DensityMatrix, target: str = "psi-") -> float:
    """Overlap <target|rho|target>; the twirl preserves exactly this number.

    The depolarized (Werner) form with the same target fidelity is
    ``werner(F)`` up to the Bell rotation, so the twirl itself reduces
    to remembering F.
    """
    if (rho.d1, rho.d2) != (2, 2):
        raise ValueError(f"twirl is defined for 2x2 states, got {rho.d1}x{rho.d2}")
    v = bell_state(target).amplitudes
    return float((v.conj() @ rho.mat @ v).real)


def rotate_bell(rho: DensityMatrix) -> DensityMatrix:
    """One-sided local rotation exchanging the psi- and phi+ fractions."""
    if (rho.d1, rho.d2) != (2, 2):
        raise ValueError(f"Bell rotation is a 2x2 operation, got {rho.d1}x{rho.d2}")
    return DensityMatrix(_ROT @ rho.mat @ _ROT.conj().T, 2, 2)


def bbpssw_purity_step(F: float) -> tuple[float, float]:
    """(F', success probability) of one recurrence step on Werner input.

    Fixed points at 1/2 and 1; strictly improving on 1/2 < F < 1.
    Below the threshold the iterates drift to the maximally mixed fixed
    point at 1/4 instead, so no input with F <= 1/2 ever crosses 1/2.
    """
    if not 0.0 <= F <= 1.0:
        raise ValueError(f"purity must lie in [0, 1], got {F}")
    rest = 1.0 - F
    numerator = F * F + rest * rest / 9.0
    p_success = F * F + 2.0 * F * rest / 3.0 + 5.0 * rest * rest / 9.0
    return numerator / p_success, p_success


def _two_pair_cnots() -> np.ndarray:
    """Both sides' XOR gates on |a1 b1 a2 b2>: pair 1 controls pair 2."""
    u = np.zeros((16, 16))
    for x in range(16):
        a1, b1, a2, b2 = (x >> 3) & 1, (x >> 2) & 1, (x >> 1) & 1, x & 1
        y = (a1 << 3) | (b1 << 2) | ((a2 ^ a1) << 1) | (b2 ^ b1)
        u[y, x] = 1.0
    return u


_U_XOR2 = _two_pair_cnots()
# Projector onto matching z-outcomes of the target pair (both up or both down).
_P_MATCH = np.kron(np.eye(4), np.diag([1.0, 0.0, 0.0, 1.0]))


def bbpssw_two_copy(rho: DensityMatrix) -> tuple[DensityMatrix, float]:
    """Exact simulation of one protocol step on two copies of a 2x2 state.

    The input is twirled to the symmetric Werner form, two copies are
    combined, both parties apply the XOR gate from their pair-1 qubit
    onto their pair-2 qubit, the target pair is measured in z and kept
    on matching outcomes, and the target pair is traced out.  Output
    fidelity is carried by the phi+ component and must reproduce the
    analytic map exactly.
    """
    f_in = min(1.0, max(0.0, twirl_fidelity(rho, "psi-")))  # clip round-off
    pair = werner(f_in)  # twirled and rotated: phi+ fraction = f_in
    two = np.kron(pair.mat, pair.mat)
    two = _U_XOR2 @ two @ _U_XOR2.T
    kept = _P_MATCH @ two @ _P_MATCH
    p_success = float(np.trace(kept).real)
    out = partial_trace(kept, 4, 4, subsystem="B") / p_success
    rho_out = DensityMatrix(out, 2, 2)

    f_expected, p_expected = bbpssw_purity_step(f_in)
    f_out = float(
        (bell_state("phi+").amplitudes.conj() @ out @ bell_state("phi+").amplitudes).real
    )
    if abs(f_out - f_expected) > 1e-10 or abs(p_success - p_expected) > 1e-10:
        raise ArithmeticError(
            f"simulation disagrees with the analytic map: "
            f"F {f_out} vs {f_expected}, p {p_success} vs {p_expected}"
        )
    return rho_out, p_success


@dataclass
class DistillationTrace:
    """Per-step (F_before, F_after, success probability) records."""

    steps: list[tuple[float, float, float]]

    def __post_init__(self) -> None:
        for f_before, f_after, p in self.steps:
            if not 0.0 < p <= 1.0:
                raise ValueError(f"success probability {p} outside (0, 1]")
            if 0.5 + 1e-12 < f_before < 1.0 - 1e-12 and not f_after > f_before:
                raise ValueError(
                    f"purity map failed to improve: {f_before} -> {f_after}"
                )

    def to_csv(self) -> str:
        lines = ["step,F_before,F_after,p_success"]
        for i, (f_before, f_after, p) in enumerate(self.steps, start=1):
            lines.append(f"{i},{f_before:.17g},{f_after:.17g},{p:.17g}")
        return "\n".join(lines) + "\n"


def iterate_distill(F0: float, n: int) -> DistillationTrace:
    """n recurrence steps from purity F0; improves monotonically iff F0 > 1/2."""
    if n < 1:
        raise ValueError(f"need at least one step, got {n}")
    f = F0
    steps = []
    for _ in range(n):
        f_next, p = bbpssw_purity_step(f)
        steps.append((f, f_next, p))
        f = f_next
    return DistillationTrace(steps)


def distillability_flags(rho: DensityMatrix) -> tuple[bool, bool, str]:
    """(NPT?, reduction violated?, verdict yes|no|unknown).

    PPT states are never distillable; NPT plus a qubit subsystem or a
    reduction violation certifies distillability; NPT alone in higher
    dimensions stays unknown.
    """
    ppt, _ = is_ppt(rho)
    red_violated, _ = reduction_check(rho)
    if ppt:
        verdict = "no"
    elif red_violated or min(rho.d1, rho.d2) == 2:
        verdict = "yes"
    else:
        verdict = "unknown"
    return (not ppt), red_violated, verdict
