"""Two-qubit reduced density matrix and Wootters concurrence.

For a permutation-symmetric N-qubit state the reduced state of any pair is
the same 4x4 matrix in the basis {|ee>, |eg>, |ge>, |gg>}, and every entry is
a linear combination of collective moments. The concurrence follows from the
spin-flip construction R = rho (sy x sy) rho* (sy x sy).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalFailure, PairUndefined
from .params import SystemParams
from .steady import ExpectationSet, _steady_tables

__all__ = [
    "ConcurrenceResult",
    "two_qubit_rho",
    "steady_pair_density",
    "concurrence",
    "concurrence_ref",
    "SIGMA_YY",
]

SIGMA_YY = np.array(
    [
        [0, 0, 0, -1],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [-1, 0, 0, 0],
    ],
    dtype=complex,
)

EIG_IMAG_TOL = 1e-9
EIG_NEG_TOL = -1e-9


@dataclass(frozen=True)
class ConcurrenceResult:
    """Concurrence with its spin-flip spectrum and analytic references.

    ``lambdas`` are the four square-rooted eigenvalues of R in descending
    order; ``concurrence`` equals max(0, lambdas[0] - sum(lambdas[1:])).
    ``c_ref_1`` = 2(|rho14| - sqrt(rho22*rho33)) and
    ``c_ref_2`` = 2(|rho23| - sqrt(rho11*rho44)) are exact for X-shaped
    states and reported alongside the full result otherwise.
    """

    concurrence: float
    lambdas: tuple[float, float, float, float]
    c_ref_1: float
    c_ref_2: float


def two_qubit_rho(moments: ExpectationSet, n_qubits: int) -> np.ndarray:
    """Pair density matrix from collective moments, basis {ee, eg, ge, gg}.

    The construction enforces Hermiticity and the exchange symmetries
    rho12 = rho13, rho22 = rho33, rho24 = rho34. Note the off-diagonal
    entries follow the convention rho_ij = <j|rho|i>, the entrywise complex
    conjugate of the <i|rho|j> partial trace; all entanglement quantities are
    invariant under this conjugation.
    """
    N = n_qubits
    if N < 2:
        raise PairUndefined(f"pair reduction needs at least 2 qubits, got {N}")
    sz, sz2 = moments.s_z, moments.s_z2
    sp, spsz, sp2 = moments.s_plus, moments.s_plus_sz, moments.s_plus2
    d4 = 4.0 * N * (N - 1)
    d2 = 2.0 * N * (N - 1)
    r11 = (N * N - 2 * N + 4 * sz2 + 4 * (N - 1) * sz) / d4
    r12 = (N * sp + 2 * spsz) / d2
    r14 = sp2 / (N * (N - 1))
    r22 = (N * N - 4 * sz2) / d4
    r24 = (sp * (N - 2) - 2 * spsz) / d2
    r44 = (N * N - 2 * N + 4 * sz2 - 4 * (N - 1) * sz) / d4
    return _assemble(r11, r12, r14, r22, r24, r44)


def _assemble(r11, r12, r14, r22, r24, r44) -> np.ndarray:
    return np.array(
        [
            [r11, r12, r12, r14],
            [np.conj(r12), r22, r22, r24],
            [np.conj(r12), r22, r22, r24],
            [np.conj(r14), np.conj(r24), np.conj(r24), r44],
        ],
        dtype=complex,
    )


def steady_pair_density(params: SystemParams, precision: str = "standard") -> np.ndarray:
    """Steady-state pair density matrix straight from the coefficient tables.

    Produces the same matrix as ``two_qubit_rho(expectation_set(params), N)``
    but evaluates every entry as its own ladder sum with nonnegative weight
    polynomials. In the weak-drive regime the diagonal entries are tiny
    differences of N^2-scale moments, and the moment-based assembly loses all
    relative accuracy there; this path keeps it.
    """
    if params.n_qubits < 2:
        raise PairUndefined(
            f"pair reduction needs at least 2 qubits, got {params.n_qubits}"
        )
    return _assemble(*_steady_tables(params, precision).pair_entries())


def _charpoly_eigvals(mat: np.ndarray) -> np.ndarray:
    """Eigenvalues via the characteristic quartic (Faddeev-LeVerrier)."""
    coeffs = np.zeros(5, dtype=complex)
    coeffs[0] = 1.0
    work = np.eye(4, dtype=complex)
    for k in range(1, 5):
        work = mat @ work
        coeffs[k] = -np.trace(work) / k
        work += coeffs[k] * np.eye(4)
    return np.roots(coeffs)


def _spin_flip_eigvals(rho: np.ndarray) -> np.ndarray:
    r_mat = rho @ SIGMA_YY @ rho.conj() @ SIGMA_YY
    try:
        return np.linalg.eigvals(r_mat)
    except np.linalg.LinAlgError:
        return _charpoly_eigvals(r_mat)


def _hermitian_lambdas(rho: np.ndarray) -> np.ndarray:
    """Spin-flip lambdas via the equivalent Hermitian problem.

    The eigenvalues of R are the squared singular values of
    sqrt(rho) (sy x sy) sqrt(rho)^T; singular values are perfectly
    conditioned, so this avoids the error amplification of the non-normal
    eigenproblem when R has near-zero eigenvalues. Round-off negatives in
    the spectrum of rho clamp to zero before the square root.
    """
    evals, vecs = np.linalg.eigh(rho)
    sqrt_rho = (vecs * np.sqrt(np.clip(evals, 0.0, None))) @ vecs.conj().T
    return np.linalg.svd(sqrt_rho @ SIGMA_YY @ sqrt_rho.conj(), compute_uv=False)


def concurrence(rho: np.ndarray) -> ConcurrenceResult:
    """Wootters concurrence of a two-qubit density matrix.

    The input is renormalized to unit trace before forming the spin-flip
    product R, guarding against accumulated round-off in the moments. The
    direct eigenvalues of R validate the input (real to 1e-9, no more
    negative than -1e-9, else NumericalFailure); the reported lambdas come
    from the equivalent Hermitian problem for full accuracy.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    trace = np.trace(rho).real
    if trace <= 0:
        raise NumericalFailure(f"density matrix has non-positive trace {trace}")
    rho = rho / trace

    ev = _spin_flip_eigvals(rho)
    max_imag = float(np.max(np.abs(ev.imag)))
    if max_imag > EIG_IMAG_TOL:
        raise NumericalFailure(
            f"spin-flip eigenvalues have imaginary part {max_imag:.3e} > {EIG_IMAG_TOL}"
        )
    if ev.real.min() < EIG_NEG_TOL:
        raise NumericalFailure(
            f"spin-flip eigenvalue {ev.real.min():.3e} below tolerance {EIG_NEG_TOL}"
        )
    try:
        lams = _hermitian_lambdas(rho)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigenvalue iteration failed: {exc}") from None
    lams = np.sort(lams)[::-1]
    c = max(0.0, float(lams[0] - lams[1] - lams[2] - lams[3]))
    ref1, ref2 = concurrence_ref(rho)
    return ConcurrenceResult(
        concurrence=c,
        lambdas=tuple(float(x) for x in lams),
        c_ref_1=ref1,
        c_ref_2=ref2,
    )


def concurrence_ref(rho: np.ndarray) -> tuple[float, float]:
    """Analytic X-state reference concurrences (C_ref_1, C_ref_2).

    For exchange-symmetric matrices rho22 = rho33, so sqrt(rho22*rho33)
    reduces to rho22; tiny negative diagonals from round-off are clamped
    before the square root.
    """
    rho = np.asarray(rho, dtype=complex)
    d = rho.diagonal().real
    ref1 = 2.0 * (abs(rho[0, 3]) - np.sqrt(max(d[1], 0.0) * max(d[2], 0.0)))
    ref2 = 2.0 * (abs(rho[1, 2]) - np.sqrt(max(d[0], 0.0) * max(d[3], 0.0)))
    return float(ref1), float(ref2)
