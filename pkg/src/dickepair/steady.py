"""Exact steady-state collective moments of the driven damped ensemble.

The stationary density operator has the closed form

    rho_ss = Z^-1 * sum_{n,m=0..N} C_nm (S-)^n (S+)^m,
    C_nm   = (-1)^(n+m) alpha^-n (alpha*)^-m a_nm,
    a_nm   = Gamma(1+n+beta) Gamma(1+m+beta*) / (n! m! Gamma(1+beta) Gamma(1+beta*)),

with alpha, beta from :func:`dickepair.params.derive_params`. Tracing against
ladder-operator products reduces every collective moment
<(S+)^p Sz^r (S-)^f> to a double sum over combinatorial weights; the sums are
evaluated entirely in log space because individual terms reach (2N+1)! scale.

Gamma-function ratios are evaluated as Pochhammer products
Gamma(1+n+beta)/Gamma(1+beta) = prod_{k=1..n} (k+beta), which is exact and
avoids complex-gamma branch cuts and overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import IndexRange, ZeroDrive
from .logcomplex import LOG_ZERO, LogComplex, logsum_complex, wrap_phase
from .params import DerivedParams, SystemParams, derive_params

__all__ = [
    "ExpectationSet",
    "pochhammer_ratio",
    "coefficient_a",
    "coefficient_c",
    "partition_z",
    "expectation",
    "expectation_set",
    "coefficient_table",
]


@dataclass(frozen=True)
class ExpectationSet:
    """The collective moments needed for the two-qubit reduction.

    ``s_z``, ``s_z2`` and ``s_plus_s_minus`` are real for any valid state
    (Hermitian observables); they are stored as floats.
    """

    s_plus: complex
    s_z: float
    s_z2: float
    s_plus_sz: complex
    s_plus2: complex
    s_plus_s_minus: float


def pochhammer_ratio(n: int, beta: complex) -> LogComplex:
    """prod_{k=1..n} (k + beta) in log-polar form; exactly 1 for n = 0."""
    if n < 0:
        raise IndexRange(f"pochhammer order must be >= 0, got {n}")
    log_mag = 0.0
    phase = 0.0
    for k in range(1, n + 1):
        z = k + beta
        log_mag += math.log(abs(z))
        phase = wrap_phase(phase + math.atan2(z.imag, z.real))
    return LogComplex(log_mag, phase)


def coefficient_a(n: int, m: int, beta: complex) -> LogComplex:
    """a_nm = poch(n, beta) * conj(poch(m, beta)) / (n! m!).

    Satisfies a_nm = conj(a_mn); a_nn is real and positive.
    """
    if n < 0 or m < 0:
        raise IndexRange(f"coefficient indices must be >= 0, got ({n}, {m})")
    prod = pochhammer_ratio(n, beta) * pochhammer_ratio(m, beta).conjugate()
    return LogComplex(prod.log_mag - math.lgamma(n + 1) - math.lgamma(m + 1), prod.phase)


def coefficient_c(n: int, m: int, derived: DerivedParams) -> LogComplex:
    """C_nm = (-1)^(n+m) alpha^-n (alpha*)^-m a_nm in log-polar form."""
    if n < 0 or m < 0:
        raise IndexRange(f"coefficient indices must be >= 0, got ({n}, {m})")
    alpha = derived.alpha
    if alpha == 0:
        raise ZeroDrive("C_nm requires a nonzero drive (alpha != 0)")
    a = coefficient_a(n, m, derived.beta)
    log_mag = a.log_mag - (n + m) * math.log(abs(alpha))
    phase = a.phase + math.pi * (n + m) - (n - m) * math.atan2(alpha.imag, alpha.real)
    return LogComplex(log_mag, phase)


@lru_cache(maxsize=None)
def _ladder_tables(n_qubits: int):
    """Parameter-independent combinatorics for one ensemble size.

    Returns (log_fact, log_weight, l_values, valid) where
    log_weight[n, m] = ln[(N-m)! (m+n)! / ((N-m-n)! m!)] on the triangle
    m <= N-n (else -inf) and l_values[n, m] = N/2 - m - n, the Sz eigenvalue
    reached after m + n lowerings from the top of the ladder.
    """
    N = n_qubits
    log_fact = np.array([math.lgamma(k + 1.0) for k in range(2 * N + 3)])
    n = np.arange(N + 1)[:, None]
    m = np.arange(N + 1)[None, :]
    valid = m <= (N - n)
    safe_nmn = np.where(valid, N - m - n, 0)
    log_weight = np.where(
        valid,
        log_fact[N - m] + log_fact[m + n] - log_fact[safe_nmn] - log_fact[m],
        LOG_ZERO,
    )
    l_values = (N / 2.0 - m - n) * np.ones_like(log_weight)
    for arr in (log_fact, log_weight, l_values, valid):
        arr.setflags(write=False)
    return log_fact, log_weight, l_values, valid


class _SteadyTables:
    """Per-operating-point coefficient tables shared by all moments.

    Pure after construction: concurrent reads are safe.
    """

    def __init__(self, params: SystemParams, precision: str = "standard"):
        if params.rabi == 0.0:
            raise ZeroDrive("steady-state formulas are singular at rabi = 0")
        self.params = params
        self.precision = precision
        self.derived = derive_params(params)
        N = params.n_qubits
        self.log_fact, self.log_weight, self.l_values, self.valid = _ladder_tables(N)

        ks = np.arange(1, N + 1) + self.derived.beta
        self.poch_log = np.concatenate([[0.0], np.cumsum(np.log(np.abs(ks)))])
        self.poch_phase = np.concatenate([[0.0], np.cumsum(np.angle(ks))])

        alpha = self.derived.alpha
        self.log_alpha = math.log(abs(alpha))
        self.arg_alpha = math.atan2(alpha.imag, alpha.real)

        # Z = sum_n a_nn |alpha|^-2n (N+n+1)! (n!)^2 / ((N-n)! (2n+1)!); the
        # (n!)^2 cancels against the denominator of a_nn, leaving positive terms.
        n = np.arange(N + 1)
        z_terms = (
            2.0 * self.poch_log
            - 2.0 * n * self.log_alpha
            + self.log_fact[N + n + 1]
            - self.log_fact[N - n]
            - self.log_fact[2 * n + 1]
        )
        self.log_z = logsum_complex(z_terms, np.zeros_like(z_terms), precision).log_mag

    def coefficient_log_table(self):
        """(N+1)x(N+1) arrays of log|C_nm| and arg(C_nm)."""
        N = self.params.n_qubits
        n = np.arange(N + 1)
        lf = self.log_fact[: N + 1]
        log_mag = (
            (self.poch_log - lf)[:, None]
            + (self.poch_log - lf)[None, :]
            - (n[:, None] + n[None, :]) * self.log_alpha
        )
        phase = (
            self.poch_phase[:, None]
            - self.poch_phase[None, :]
            + math.pi * (n[:, None] + n[None, :])
            - (n[:, None] - n[None, :]) * self.arg_alpha
        )
        return log_mag, phase

    def moment(self, p: int, r: int, f: int) -> complex:
        """<(S+)^p Sz^r (S-)^f> by a flat log-space sum over the (n, m) grid."""
        N = self.params.n_qubits
        for name, v in (("p", p), ("r", r), ("f", f)):
            if v < 0 or v > N:
                raise IndexRange(f"moment index {name}={v} outside 0..{N}")
        nmin = max(p, f)
        n = np.arange(nmin, N + 1)
        # C_{n-f, n-p}; the sign factor (-1)^((n-f)+(n-p)) reduces to (-1)^(p+f)
        # and is carried as an exact sign, not a pi phase offset
        c_mag = (
            self.poch_log[n - f]
            + self.poch_log[n - p]
            - self.log_fact[n - f]
            - self.log_fact[n - p]
            - (2 * n - p - f) * self.log_alpha
        )
        c_phase = (
            self.poch_phase[n - f]
            - self.poch_phase[n - p]
            - (p - f) * self.arg_alpha
        )
        sign = -1.0 if (p + f) % 2 else 1.0

        log_w = self.log_weight[nmin:, :]
        lvals = self.l_values[nmin:, :]
        term_log = log_w + c_mag[:, None]
        term_phase = np.broadcast_to(c_phase[:, None], term_log.shape)
        if r > 0:
            with np.errstate(divide="ignore"):
                term_log = term_log + r * np.log(np.abs(lvals))
        if r % 2 == 1:
            term_sign = np.where(lvals < 0.0, -sign, sign)
        else:
            term_sign = np.full(term_log.shape, sign)

        total = logsum_complex(
            term_log.ravel(), np.ravel(term_phase), self.precision,
            signs=term_sign.ravel(),
        )
        return LogComplex(total.log_mag - self.log_z, total.phase).to_complex()

    def moment_set(self) -> ExpectationSet:
        return ExpectationSet(
            s_plus=self.moment(1, 0, 0),
            s_z=self.moment(0, 1, 0).real,
            s_z2=self.moment(0, 2, 0).real,
            s_plus_sz=self.moment(1, 1, 0),
            s_plus2=self.moment(2, 0, 0),
            s_plus_s_minus=self.moment(1, 0, 1).real,
        )

    def pair_entries(self):
        """The six independent pair-matrix entries as dedicated ladder sums.

        Each entry is the expectation of an operator combination whose ladder
        weight polynomial is nonnegative on the whole grid, e.g.
        rho11 ~ <(Sz+N/2)(Sz+N/2-1)> with weights (N-m-n)(N-m-n-1) >= 0.
        This avoids the catastrophic cancellation that assembling the entries
        from separately computed <Sz>, <Sz^2> moments suffers in the
        weak-drive regime, where the entries are tiny differences of
        N^2-scale moments.
        Returns (r11, r12, r14, r22, r24, r44).
        """
        N = self.params.n_qubits
        lf = self.log_fact
        log_pair = math.log(N) + math.log(N - 1)
        up = self.l_values + N / 2.0     # N - m - n on the valid triangle
        down = N / 2.0 - self.l_values   # m + n

        def entry(row0, coeff_mag, coeff_phase, sign, poly):
            with np.errstate(divide="ignore", invalid="ignore"):
                poly_log = np.where(poly > 0.0, np.log(np.where(poly > 0, poly, 1.0)),
                                    LOG_ZERO)
            tl = coeff_mag[:, None] + self.log_weight[row0:, :] + poly_log[row0:, :]
            tp = np.broadcast_to(coeff_phase[:, None], tl.shape)
            total = logsum_complex(tl.ravel(), np.ravel(tp), self.precision,
                                   signs=np.full(tl.size, sign))
            return LogComplex(total.log_mag - self.log_z - log_pair,
                              total.phase).to_complex()

        n = np.arange(N + 1)
        diag_mag = 2.0 * self.poch_log - 2.0 * lf[: N + 1] - 2.0 * n * self.log_alpha
        zero_phase = np.zeros(N + 1)
        r11 = entry(0, diag_mag, zero_phase, 1.0, up * (up - 1.0)).real
        r22 = entry(0, diag_mag, zero_phase, 1.0, down * up).real
        r44 = entry(0, diag_mag, zero_phase, 1.0, down * (down - 1.0)).real

        n1 = np.arange(1, N + 1)
        c1_mag = (self.poch_log[n1] + self.poch_log[n1 - 1] - lf[n1] - lf[n1 - 1]
                  - (2 * n1 - 1) * self.log_alpha)
        c1_phase = self.poch_phase[n1] - self.poch_phase[n1 - 1] - self.arg_alpha
        r12 = entry(1, c1_mag, c1_phase, -1.0, up)
        r24 = entry(1, c1_mag, c1_phase, -1.0, down - 1.0)

        n2 = np.arange(2, N + 1)
        c2_mag = (self.poch_log[n2] + self.poch_log[n2 - 2] - lf[n2] - lf[n2 - 2]
                  - (2 * n2 - 2) * self.log_alpha)
        c2_phase = self.poch_phase[n2] - self.poch_phase[n2 - 2] - 2.0 * self.arg_alpha
        r14 = entry(2, c2_mag, c2_phase, 1.0, np.ones_like(up))

        return r11, r12, r14, r22, r24, r44


@lru_cache(maxsize=128)
def _steady_tables(params: SystemParams, precision: str) -> _SteadyTables:
    return _SteadyTables(params, precision)


def coefficient_table(params: SystemParams, precision: str = "standard"):
    """Log-magnitude and phase arrays of the full C_nm table for one point."""
    return _steady_tables(params, precision).coefficient_log_table()


def partition_z(params: SystemParams, precision: str = "standard") -> LogComplex:
    """Normalization Z in log form; real and strictly positive."""
    return LogComplex(_steady_tables(params, precision).log_z, 0.0)


def expectation(params: SystemParams, p: int, r: int, f: int,
                precision: str = "standard") -> complex:
    """Steady-state <(S+)^p Sz^r (S-)^f> for 0 <= p, r, f <= N."""
    return _steady_tables(params, precision).moment(p, r, f)


def expectation_set(params: SystemParams, precision: str = "standard") -> ExpectationSet:
    """All moments entering the pair density matrix, from shared tables."""
    return _steady_tables(params, precision).moment_set()
