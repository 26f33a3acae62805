"""
Adiabaticity parameter of the dark-state pathway.

    A(t) = |<D+| dH/dt |D0>| / |E+ - E0|^2

with D+ the lowest positive-energy eigenstate.  dH/dt is exact because H is
linear in the couplings.  For the ideal symmetric pulses the maximum sits at
the pulse crossing, where A = 4 pi / (sqrt(3) Omega_max t_max).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chain import ChainSpec, tridiagonal
from .errors import DegenerateSpectrumError, DimensionError, DomainError
from .pulses import PulseSchedule, evaluate, evaluate_derivative
from .spectrum import diagonalize

GAP_CUTOFF = 1e-12
_PEAK_CONSTANT = 4.0 * math.pi / math.sqrt(3.0)


@dataclass(frozen=True)
class AdiabaticityTrace:
    times: np.ndarray
    a_values: np.ndarray
    a_peak: float
    t_peak: float


def adiabaticity_general(spec: ChainSpec, schedule: PulseSchedule, t: float) -> float:
    if spec.num_sites != schedule.num_sites:
        raise DimensionError(f"chain has {spec.num_sites} sites, schedule {schedule.num_sites}")
    omegas = evaluate(schedule, t)
    eigs = diagonalize(tridiagonal(omegas))
    k0 = eigs.zero_index()
    energies = eigs.eigenvalues
    positive = energies > eigs.zero_tolerance()
    if not np.any(positive):
        raise DegenerateSpectrumError(f"no positive eigenvalue at t={t}")
    e_plus = float(energies[positive].min())
    if e_plus <= GAP_CUTOFF:
        raise DegenerateSpectrumError(f"gap {e_plus:.3e} ns^-1 at t={t}")
    drive = tridiagonal(evaluate_derivative(schedule, t)) @ eigs.eigenvectors[:, k0]
    # Project onto the whole E+ eigenspace so a degenerate pair (only at the
    # endpoints, where dH/dt = 0) gives a basis-independent answer.
    block = np.abs(energies - e_plus) <= 1e-9 * max(1.0, e_plus)
    coupling = np.linalg.norm(eigs.eigenvectors[:, block].T @ drive)
    return float(coupling / e_plus**2)


def adiabaticity_trace(
    spec: ChainSpec, schedule: PulseSchedule, num_points: int = 1001
) -> AdiabaticityTrace:
    """A(t) on a uniform grid of ``num_points`` including both endpoints."""
    if num_points < 2:
        raise DomainError("num_points must be >= 2")
    times = np.linspace(0.0, schedule.t_max, num_points)
    times[-1] = schedule.t_max
    values = np.array([adiabaticity_general(spec, schedule, t) for t in times])
    k = int(np.argmax(values))
    return AdiabaticityTrace(times, values, float(values[k]), float(times[k]))


def adiabaticity_peak_closed_form(omega_max: float, t_max: float) -> float:
    if not (omega_max > 0 and t_max > 0):
        raise DomainError(f"omega_max and t_max must be positive, got ({omega_max}, {t_max})")
    return _PEAK_CONSTANT / (omega_max * t_max)


def required_tmax(omega_max: float, a_target: float) -> float:
    """Protocol time (ns) whose crossing-point adiabaticity equals ``a_target``."""
    if not omega_max > 0:
        raise DomainError(f"omega_max must be positive, got {omega_max}")
    if not 0 < a_target < 1:
        raise DomainError(f"a_target must be in (0, 1), got {a_target}")
    return _PEAK_CONSTANT / (omega_max * a_target)
