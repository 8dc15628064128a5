"""Exception types raised by the numerical modules."""


class DickepairError(Exception):
    """Base class for all package errors."""


class ZeroDrive(DickepairError):
    """Steady-state formulas are singular at zero drive (alpha^-n undefined).

    The zero-drive limit is the pure ground state; callers wanting that limit
    should use a small but finite drive, e.g. rabi = 1e-4 * decay.
    """


class IndexRange(DickepairError):
    """A moment index (p, r, f) is negative or exceeds the qubit number."""


class PairUndefined(DickepairError):
    """Two-qubit reduction requested for fewer than two qubits."""


class NumericalFailure(DickepairError):
    """An eigenvalue computation failed or produced out-of-tolerance values."""


class SizeExceeded(DickepairError):
    """Dense brute-force solve requested beyond the supported system size."""


class DegenerateNullSpace(DickepairError):
    """The Liouvillian has more than one near-zero singular value."""


class NotConverged(DickepairError):
    """Time evolution did not reach a stationary state."""


class GridTooCoarse(DickepairError):
    """Transition detection needs a finer parameter grid."""


class UnknownFigure(DickepairError):
    """No preset with the requested name."""
