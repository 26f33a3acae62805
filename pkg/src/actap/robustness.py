"""
Fabrication-disorder sweeps.

Every edge of the schedule gets a static multiplicative factor drawn
log-uniformly from [1/r, r].  This is a surrogate for donor-placement
straggle (tunnelling depends roughly exponentially on spacing); no
distribution is implied by the device physics beyond that.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from .adiabaticity import adiabaticity_trace
from .chain import ChainSpec
from .errors import ActapError, DimensionError, DomainError
from .evolution import default_steps, propagate
from .pulses import PulseSchedule

DISORDER_MODEL = "log-uniform multiplicative per-edge factors (straggle surrogate)"


@dataclass(frozen=True)
class DisorderSpec:
    ratio: float
    samples: int
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.ratio >= 1 or not np.isfinite(self.ratio):
            raise DomainError(f"disorder ratio must be >= 1, got {self.ratio}")
        if int(self.samples) != self.samples or self.samples < 1:
            raise DomainError(f"samples must be a positive integer, got {self.samples}")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass(frozen=True)
class DisorderSample:
    index: int
    factors: tuple[float, ...]
    transfer_fidelity: float
    a_peak: float
    error: str | None = None


def draw_factors(d: DisorderSpec, index: int, num_edges: int) -> np.ndarray:
    """Per-edge factors for sample ``index``; depends only on (seed, index)."""
    rng = np.random.default_rng([int(d.seed), int(index)])
    span = np.log(d.ratio)
    return np.exp(rng.uniform(-span, span, size=num_edges))


def _run_one(
    schedule: PulseSchedule, d: DisorderSpec, index: int, steps_per_cycle: float, adiabatic_points: int
) -> DisorderSample:
    factors = draw_factors(d, index, schedule.num_edges) * schedule.scale_array()
    disordered = schedule.with_scales(factors)
    device = ChainSpec(disordered.num_sites // 2, disordered.edge_bounds())
    try:
        trace = propagate(device, disordered, steps=default_steps(disordered, steps_per_cycle), samples=2)
        a_peak = adiabaticity_trace(device, disordered, adiabatic_points).a_peak
    except ActapError as exc:
        return DisorderSample(index, tuple(factors), float("nan"), float("nan"), f"{type(exc).__name__}: {exc}")
    return DisorderSample(index, tuple(factors), trace.transfer_fidelity, a_peak)


def sample_disordered_run(
    spec: ChainSpec,
    schedule: PulseSchedule,
    d: DisorderSpec,
    *,
    steps_per_cycle: float = 20.0,
    adiabatic_points: int = 401,
    workers: int = 1,
) -> list[DisorderSample]:
    """Run ``d.samples`` disordered copies of ``schedule``; results are in sample order.

    Factors scale each edge's (min, max), so schedules with zero floors keep
    their endpoint nulling.  Numerical failures are recorded per sample.
    """
    if spec.num_sites != schedule.num_sites:
        raise DimensionError(f"chain has {spec.num_sites} sites, schedule {schedule.num_sites}")
    job = partial(
        _run_one, schedule, d, steps_per_cycle=steps_per_cycle, adiabatic_points=adiabatic_points
    )
    indices = range(d.samples)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(job, indices))
    return [job(i) for i in indices]
