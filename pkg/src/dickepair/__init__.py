"""Steady-state pairwise entanglement of driven, collectively damped qubit ensembles.

The package evaluates the exact stationary state of N identical two-level
emitters under coherent drive, collective spontaneous emission and a common
pair dipole shift, reduces it to the two-qubit density matrix of an arbitrary
pair, and computes the Wootters concurrence, with parameter sweeps that
locate the collective transition signatures of large ensembles.
"""

__version__ = "0.1.0"

from .errors import (
    DegenerateNullSpace,
    DickepairError,
    GridTooCoarse,
    IndexRange,
    NotConverged,
    NumericalFailure,
    PairUndefined,
    SizeExceeded,
    UnknownFigure,
    ZeroDrive,
)
from .logcomplex import LogComplex, logsum_complex
from .params import DerivedParams, SystemParams, derive_params
from .steady import (
    ExpectationSet,
    coefficient_a,
    coefficient_c,
    expectation,
    expectation_set,
    partition_z,
    pochhammer_ratio,
)
from .pairwise import (
    ConcurrenceResult,
    concurrence,
    concurrence_ref,
    steady_pair_density,
    two_qubit_rho,
)
from .oracle import (
    DickeBasisOperators,
    build_liouvillian,
    density_expectation_set,
    evolve_to_steady,
    oracle_pair_density,
    steady_state_null_space,
)
from .sweep import (
    AxisSpec,
    SweepResult,
    TransitionReport,
    detect_transition,
    find_max_concurrence,
    sweep,
)

__all__ = [
    "__version__",
    "SystemParams", "DerivedParams", "derive_params",
    "LogComplex", "logsum_complex",
    "ExpectationSet", "pochhammer_ratio", "coefficient_a", "coefficient_c",
    "partition_z", "expectation", "expectation_set",
    "ConcurrenceResult", "two_qubit_rho", "steady_pair_density", "concurrence",
    "concurrence_ref",
    "DickeBasisOperators", "build_liouvillian", "steady_state_null_space",
    "evolve_to_steady", "density_expectation_set", "oracle_pair_density",
    "AxisSpec", "SweepResult", "TransitionReport", "sweep",
    "find_max_concurrence", "detect_transition",
    "DickepairError", "ZeroDrive", "IndexRange", "PairUndefined",
    "NumericalFailure", "SizeExceeded", "DegenerateNullSpace", "NotConverged",
    "GridTooCoarse", "UnknownFigure",
]
