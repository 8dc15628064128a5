"""Physical parameters of the driven, collectively damped qubit ensemble.

All rates are measured in units of the single-qubit decay constant ``decay``
(gamma); the natural drive axis for collective effects is the pump parameter
2*rabi / (n_qubits * decay).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class SystemParams:
    """Inputs defining one operating point.

    Parameters
    ----------
    n_qubits : int
        Number of two-level emitters, N >= 1 (pair quantities need N >= 2).
    rabi : float
        Drive amplitude Omega >= 0. Zero is allowed here but rejected by the
        steady-state formulas, which are singular at zero drive.
    detuning : float
        Emitter-drive detuning Delta = omega_0 - omega_L.
    dipole_shift : float
        Pair dipole-dipole shift delta, identical for all pairs.
    decay : float
        Reference decay rate gamma > 0 that sets the unit of rate.
    """

    n_qubits: int
    rabi: float
    detuning: float = 0.0
    dipole_shift: float = 0.0
    decay: float = 1.0

    def __post_init__(self):
        if not isinstance(self.n_qubits, int) or self.n_qubits < 1:
            raise ValueError(f"n_qubits must be a positive integer, got {self.n_qubits!r}")
        if not (self.rabi >= 0.0 and math.isfinite(self.rabi)):
            raise ValueError(f"rabi must be finite and >= 0, got {self.rabi!r}")
        if not (self.decay > 0.0 and math.isfinite(self.decay)):
            raise ValueError(f"decay must be finite and > 0, got {self.decay!r}")
        for name in ("detuning", "dipole_shift"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def pump(self) -> float:
        """Scaled drive 2*Omega/(N*gamma)."""
        return 2.0 * self.rabi / (self.n_qubits * self.decay)

    def with_pump(self, pump: float) -> "SystemParams":
        """Copy of these parameters with rabi set from a pump value."""
        return replace(self, rabi=pump * self.n_qubits * self.decay / 2.0)


@dataclass(frozen=True)
class DerivedParams:
    """Complex drive parameters entering the closed-form steady state."""

    alpha: complex
    beta: complex
    tilde_detuning: float


def derive_params(params: SystemParams) -> DerivedParams:
    """Derived complex parameters for a valid operating point.

    alpha = i*Omega / (gamma + i*delta), beta = i*(Delta + delta) / (gamma + i*delta),
    with tilde_detuning = Delta + delta. The denominator never vanishes since
    gamma > 0.
    """
    denom = complex(params.decay, params.dipole_shift)
    tilde = params.detuning + params.dipole_shift
    return DerivedParams(
        alpha=1j * params.rabi / denom,
        beta=1j * tilde / denom,
        tilde_detuning=tilde,
    )
