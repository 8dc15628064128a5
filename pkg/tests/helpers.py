"""Shared numeric utilities for the test suite.

The concurrence and partial-trace helpers here are deliberately written
from first principles (characteristic polynomial, explicit embedding into
the full 2^N space) so they stay independent of the package code paths they
check.
"""
import math
from itertools import combinations

import mpmath
import numpy as np

from dickepair import SystemParams, build_liouvillian, steady_state_null_space

SIGMA_YY = np.array(
    [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=complex
)

MOMENT_FIELDS = ("s_plus", "s_z", "s_z2", "s_plus_sz", "s_plus2", "s_plus_s_minus")


def charpoly_concurrence(rho, dps=40):
    """Concurrence with spin-flip eigenvalues from quartic root finding.

    Evaluated in high-precision arithmetic so that clustered eigenvalues of
    the spin-flip product (an ill-conditioned quartic in doubles) do not
    limit the oracle; the double-precision input is converted exactly.
    """
    rho = np.asarray(rho, dtype=complex)
    with mpmath.workdps(dps):
        m = mpmath.matrix(4, 4)
        flip = mpmath.matrix(4, 4)
        for i in range(4):
            for j in range(4):
                m[i, j] = mpmath.mpc(rho[i, j])
                flip[i, j] = mpmath.mpc(SIGMA_YY[i, j])
        m = m / mpmath.fsum(m[i, i] for i in range(4))
        conj = m.copy()
        for i in range(4):
            for j in range(4):
                conj[i, j] = mpmath.conj(m[i, j])
        r = m * flip * conj * flip
        # Newton's identities from power sums of R
        power = r.copy()
        p = [None]
        for _ in range(4):
            p.append(mpmath.fsum(power[i, i] for i in range(4)))
            power = power * r
        e1 = p[1]
        e2 = (e1 * p[1] - p[2]) / 2
        e3 = (e2 * p[1] - e1 * p[2] + p[3]) / 3
        e4 = (e3 * p[1] - e2 * p[2] + e1 * p[3] - p[4]) / 4
        roots = mpmath.polyroots([1, -e1, e2, -e3, e4], maxsteps=200, extraprec=120)
        lams = sorted((mpmath.sqrt(max(mpmath.re(x), 0)) for x in roots), reverse=True)
        return max(0.0, float(lams[0] - lams[1] - lams[2] - lams[3]))


def random_symmetric_rho(rng):
    """Random physical two-qubit state symmetric under exchange of the qubits."""
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = g @ g.conj().T
    swap = np.eye(4)[[0, 2, 1, 3]]
    rho = 0.5 * (rho + swap @ rho @ swap)
    return rho / np.trace(rho)


def random_x_state(rng):
    """Exchange-symmetric X-shaped state: rho12 = rho24 = 0 and rho23 = rho22."""
    d = rng.uniform(0.05, 1.0, size=3)  # populations (r11, r22, r44) before norm
    r11, r22, r44 = d / (d[0] + 2 * d[1] + d[2])
    mag = rng.uniform(0.0, 1.0) * math.sqrt(r11 * r44)
    phase = rng.uniform(-math.pi, math.pi)
    r14 = mag * np.exp(1j * phase)
    rho = np.diag([r11, r22, r22, r44]).astype(complex)
    rho[0, 3] = r14
    rho[3, 0] = np.conj(r14)
    rho[1, 2] = rho[2, 1] = r22
    return rho


def embed_isometry(n):
    """(2^n, n+1) isometry from the symmetric ladder into the full space.

    Ladder index k = number of excitations; bit 1 = excited, qubit 0 is the
    most significant bit.
    """
    iso = np.zeros((2**n, n + 1))
    for k in range(n + 1):
        for excited in combinations(range(n), k):
            iso[sum(1 << (n - 1 - q) for q in excited), k] = 1.0
        iso[:, k] /= math.sqrt(math.comb(n, k))
    return iso


def pair_partial_trace(rho_ladder, n):
    """Literal partial trace onto qubits (0, 1), basis {ee, eg, ge, gg}."""
    iso = embed_isometry(n)
    rho_full = iso @ rho_ladder @ iso.conj().T
    rest = 2 ** (n - 2)
    blocks = rho_full.reshape(4, rest, 4, rest)
    reduced = np.einsum("arbr->ab", blocks)
    # full-space index 0 is all-ground, so reverse into {ee, eg, ge, gg}
    return reduced[::-1, ::-1]


def steady_rho(params: SystemParams):
    return steady_state_null_space(build_liouvillian(params))
