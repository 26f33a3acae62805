"""
Schroedinger propagation of a single particle through a pulse schedule.

Closed-system evolution i dpsi/dt = H(t) psi.  Each uniform step uses the
fourth-order Magnus expansion with two Gauss-Legendre nodes,

    H_eff = h/2 (H1 + H2) - i sqrt(3)/12 h^2 [H2, H1]
    psi  <- exp(-i H_eff) psi,

where H_eff is Hermitian so every step is unitary up to rounding.  The
exponentials are formed from a batched Hermitian eigendecomposition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .chain import ChainSpec, tridiagonal
from .darkstate import dark_state
from .errors import DegenerateInputError, DimensionError, DomainError, IntegratorError
from .pulses import PulseSchedule, evaluate

MIN_STEPS = 100
MAX_SAMPLES = 2000
NORM_FAIL = 1e-6
_GAUSS = math.sqrt(3.0) / 6.0
_CHUNK = 4096


@dataclass(frozen=True)
class EvolutionTrace:
    times: np.ndarray
    populations: np.ndarray
    state_final: np.ndarray
    transfer_fidelity: float
    dark_state_fidelity: np.ndarray
    norms: np.ndarray
    steps: int

    @property
    def max_norm_drift(self) -> float:
        return float(np.max(np.abs(self.norms - 1.0)))


def site_state(num_sites: int, site: int) -> np.ndarray:
    """Position eigenstate |site> (1-based)."""
    if not 1 <= site <= num_sites:
        raise DomainError(f"site must be in 1..{num_sites}, got {site}")
    psi = np.zeros(num_sites, dtype=complex)
    psi[site - 1] = 1.0
    return psi


def default_steps(schedule: PulseSchedule, per_cycle: float = 20.0) -> int:
    """Uniform step count giving ``per_cycle`` steps per unit of Omega_peak * t."""
    return max(MIN_STEPS, math.ceil(per_cycle * schedule.peak_coupling * schedule.t_max))


def sample_indices(steps: int, samples: int) -> np.ndarray:
    """Integration-grid indices of the output grid; always includes 0 and ``steps``."""
    samples = min(samples, MAX_SAMPLES, steps + 1)
    return np.unique(np.rint(np.linspace(0, steps, max(samples, 2))).astype(int))


def _step_propagators(schedule: PulseSchedule, t0: np.ndarray, h: float) -> np.ndarray:
    h1 = tridiagonal(evaluate(schedule, t0 + (0.5 - _GAUSS) * h))
    h2 = tridiagonal(evaluate(schedule, np.minimum(t0 + (0.5 + _GAUSS) * h, schedule.t_max)))
    comm = h2 @ h1 - h1 @ h2
    heff = 0.5 * h * (h1 + h2) - 1j * (math.sqrt(3.0) / 12.0) * h * h * comm
    w, v = np.linalg.eigh(heff)
    return (v * np.exp(-1j * w)[..., None, :]) @ np.swapaxes(v.conj(), -1, -2)


def _dark_overlap(omegas: np.ndarray, psi: np.ndarray) -> float:
    try:
        d0 = dark_state(omegas)
    except DegenerateInputError:
        return float("nan")
    return float(abs(np.vdot(d0, psi)) ** 2)


def propagate(
    spec: ChainSpec,
    schedule: PulseSchedule,
    initial: Sequence[complex] | np.ndarray | None = None,
    steps: int | None = None,
    samples: int = 1001,
) -> EvolutionTrace:
    """Evolve ``initial`` (default |1>) over [0, t_max] in ``steps`` uniform steps.

    Populations are recorded on at most ``samples`` (<= 2000) points of the
    integration grid.  A norm drift above 1e-6 raises :class:`IntegratorError`.
    """
    if spec.num_sites != schedule.num_sites:
        raise DimensionError(f"chain has {spec.num_sites} sites, schedule {schedule.num_sites}")
    if not spec.admits(schedule.edge_bounds()):
        raise DomainError("schedule drives couplings outside the chain's bounds")
    n = spec.num_sites
    psi = site_state(n, 1) if initial is None else np.array(initial, dtype=complex)
    if psi.shape != (n,):
        raise DimensionError(f"initial state must have length {n}, got shape {psi.shape}")
    if abs(np.linalg.norm(psi) - 1.0) > 1e-12:
        raise DomainError("initial state must be normalised")
    if steps is None:
        steps = default_steps(schedule)
    if int(steps) != steps or steps < MIN_STEPS:
        raise DomainError(f"steps must be an integer >= {MIN_STEPS}, got {steps!r}")
    steps = int(steps)

    h = schedule.t_max / steps
    keep = sample_indices(steps, samples)
    record = np.zeros(steps + 1, dtype=bool)
    record[keep] = True

    states = np.empty((keep.size, n), dtype=complex)
    row = 0
    if record[0]:
        states[row] = psi
        row += 1
    for start in range(0, steps, _CHUNK):
        stop = min(start + _CHUNK, steps)
        props = _step_propagators(schedule, np.arange(start, stop) * h, h)
        for j, u in enumerate(props, start=start + 1):
            psi = u @ psi
            if record[j]:
                drift = abs(np.linalg.norm(psi) - 1.0)
                if drift > NORM_FAIL:
                    raise IntegratorError(f"norm drift {drift:.2e} at t={j * h:.6g} ns; increase steps")
                states[row] = psi
                row += 1

    times = keep * h
    times[-1] = schedule.t_max
    populations = np.abs(states) ** 2
    couplings = evaluate(schedule, times)
    d0_fid = np.array([_dark_overlap(c, s) for c, s in zip(couplings, states)])
    return EvolutionTrace(
        times=times,
        populations=populations,
        state_final=psi,
        transfer_fidelity=float(abs(psi[-1]) ** 2),
        dark_state_fidelity=d0_fid,
        norms=np.linalg.norm(states, axis=1),
        steps=steps,
    )


def transfer_fidelity_vs_tmax(
    spec: ChainSpec,
    template: PulseSchedule,
    tmax_list: Sequence[float],
    steps_per_cycle: float = 20.0,
) -> list[tuple[float, float]]:
    """Final end-site population for each t_max, using ``template`` for everything else."""
    tmax_list = list(tmax_list)
    if not tmax_list:
        raise DomainError("tmax_list must be nonempty")
    out = []
    for t_max in tmax_list:
        schedule = template.with_t_max(float(t_max))
        trace = propagate(spec, schedule, steps=default_steps(schedule, steps_per_cycle), samples=2)
        out.append((float(t_max), trace.transfer_fidelity))
    return out
