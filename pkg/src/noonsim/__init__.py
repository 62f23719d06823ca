"""Pure dephasing, partial-transpose entanglement and NOON-state visibility
for two-mode N-photon states."""

from .dephasing import DephasingParams, evolve_analytic, evolve_numeric, generator_apply
from .errors import *  # noqa: F401,F403
from .interferometry import (
    FringeCurve,
    VisibilityRecord,
    crossing_time,
    fringe,
    t_crit,
    visibility,
    visibility_curve,
)
from .linalg import Spectrum, frobenius_distance, hermitian_eigenvalues
from .partial_transpose import (
    EsdPoint,
    PTBlock,
    PTSpectrum,
    esd_probe,
    negativity,
    partial_transpose_matrix,
    pt_spectrum_analytic,
    pt_spectrum_numeric,
)
from .state_core import PureCoefficients, TwoModeNState, from_pure, make_noon, validate
from .stateio import parse_state_file, serialize_state

__version__ = "0.1.0"
