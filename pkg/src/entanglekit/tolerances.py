"""Numerical cutoffs shared across the package.

All classification decisions (PSD-ness, CCN excess, witness verification)
go through the constants below so that tests can pin them in one place.
"""

from __future__ import annotations

import os

#: Relative tolerance for accepting a matrix as Hermitian.
HERM_RTOL = 1e-8

#: Absolute tolerance on |trace - 1| for density matrices.
TRACE_ATOL = 1e-10

#: Default magnitude of the PSD cutoff: an operator counts as positive
#: semidefinite when its smallest eigenvalue is >= -PSD_ATOL.
PSD_ATOL = 1e-10

#: A realignment trace norm above 1 + CCN_EXCESS flags entanglement.
CCN_EXCESS = 1e-9

#: A witness candidate is accepted when its minimal product expectation
#: is >= -WITNESS_ATOL.
WITNESS_ATOL = 1e-7


def psd_tol() -> float:
    """Magnitude of the PSD cutoff, honouring the ENTANGLEKIT_TOL override.

    The environment variable may carry the cutoff with either sign
    (it is documented as the lower bound -1e-10 on the minimum
    eigenvalue); only its magnitude matters here.
    """
    raw = os.environ.get("ENTANGLEKIT_TOL")
    if raw is None:
        return PSD_ATOL
    return abs(float(raw))
