"""Bipartite quantum-state analysis toolkit.

Separability criteria, entanglement measures, Bell-inequality
maximization, recurrence distillation, Hilbert-space geometry and
magic-simplex scans for finite-dimensional bipartite systems.
"""

from .states import (
    DensityMatrix,
    PureState,
    bell_state,
    from_pure,
    horodecki_3x3,
    load_state,
    max_entangled,
    maximally_mixed,
    random_density,
    random_separable,
    save_state,
    werner,
)
from .criteria import ClassificationReport, classify, is_ppt, schmidt
from .geometry import (
    Witness,
    bnt_bounds,
    bures_distance,
    closest_separable_check,
    geometric_witness,
    hs_distance,
    min_product_expectation,
    nearest_ppt_state,
    relative_entropy,
    verify_witness,
)
from .measures import (
    MeasureResult,
    concurrence_2q,
    eof_2q,
    fully_entangled_fraction,
    linear_entropy,
    negativity,
    pure_entanglement,
    random_robustness,
    von_neumann_entropy,
)
from .nonlocality import (
    ChshSettings,
    chsh_max,
    chsh_value,
    optimal_chsh_settings,
)
from .distillation import bbpssw_purity_step, bbpssw_two_copy, iterate_distill

__version__ = "0.1.0"

__all__ = [
    "DensityMatrix",
    "PureState",
    "bell_state",
    "from_pure",
    "horodecki_3x3",
    "load_state",
    "max_entangled",
    "maximally_mixed",
    "random_density",
    "random_separable",
    "save_state",
    "werner",
    "ClassificationReport",
    "classify",
    "is_ppt",
    "schmidt",
    "Witness",
    "bnt_bounds",
    "bures_distance",
    "closest_separable_check",
    "geometric_witness",
    "hs_distance",
    "min_product_expectation",
    "nearest_ppt_state",
    "relative_entropy",
    "verify_witness",
    "MeasureResult",
    "concurrence_2q",
    "eof_2q",
    "fully_entangled_fraction",
    "linear_entropy",
    "negativity",
    "pure_entanglement",
    "random_robustness",
    "von_neumann_entropy",
    "ChshSettings",
    "chsh_max",
    "chsh_value",
    "optimal_chsh_settings",
    "bbpssw_purity_step",
    "bbpssw_two_copy",
    "iterate_distill",
]
