"""
Counter-intuitive pulse schedules for the A-B chain.

The odd group (Omega_1, Omega_3, ...) follows a sin^2 ramp up and the even
group (Omega_2, Omega_4, ...) a cos^2 ramp down, each optionally floored:

    odd(t)  = min1 + (max1 - min1) sin^2(pi t / 2 t_max)
    even(t) = min2 + (max2 - min2) cos^2(pi t / 2 t_max)

Per-edge scale factors multiply the result (static fabrication disorder).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .chain import half_length
from .errors import DimensionError, DomainError


@dataclass(frozen=True)
class Pulse:
    omega_min: float
    omega_max: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.omega_min <= self.omega_max) or not np.isfinite(self.omega_max):
            raise DomainError(
                f"pulse needs 0 <= omega_min <= omega_max, got ({self.omega_min}, {self.omega_max})"
            )

    @property
    def swing(self) -> float:
        return self.omega_max - self.omega_min


@dataclass(frozen=True)
class PulseSchedule:
    """Two global controls plus static per-edge scales on a chain of ``num_sites``.

    ``reverse=True`` plays the schedule backwards in time, t -> t_max - t.
    """

    num_sites: int
    t_max: float
    odd: Pulse
    even: Pulse
    scales: tuple[float, ...] | None = None
    reverse: bool = False

    def __post_init__(self) -> None:
        half_length(self.num_sites)
        if not (self.t_max > 0) or not np.isfinite(self.t_max):
            raise DomainError(f"t_max must be positive, got {self.t_max!r}")
        if self.odd.omega_max <= 0 and self.even.omega_max <= 0:
            raise DomainError("at least one pulse must have omega_max > 0")
        if self.scales is not None:
            scales = tuple(float(s) for s in self.scales)
            if len(scales) != self.num_edges:
                raise DimensionError(f"expected {self.num_edges} scale factors, got {len(scales)}")
            if any(not (s >= 0) or not np.isfinite(s) for s in scales):
                raise DomainError(f"scale factors must be finite and non-negative, got {scales}")
            object.__setattr__(self, "scales", scales)

    @property
    def num_edges(self) -> int:
        return self.num_sites - 1

    @property
    def peak_coupling(self) -> float:
        """Largest coupling any edge reaches over the protocol."""
        scales = self.scale_array()
        return float(
            max(
                self.odd.omega_max * scales[0::2].max(),
                self.even.omega_max * scales[1::2].max(),
            )
        )

    def edge_bounds(self) -> tuple[tuple[float, float], ...]:
        """(min, max) reached by each edge over the protocol."""
        scales = self.scale_array()
        return tuple(
            (pulse.omega_min * s, pulse.omega_max * s)
            for pulse, s in zip((self.odd, self.even) * (self.num_edges // 2), scales)
        )

    def scale_array(self) -> np.ndarray:
        if self.scales is None:
            return np.ones(self.num_edges)
        return np.array(self.scales)

    @classmethod
    def ideal(cls, num_sites: int, omega_max: float, t_max: float) -> "PulseSchedule":
        """Both groups swing fully between 0 and ``omega_max``."""
        return cls(num_sites, t_max, Pulse(0.0, omega_max), Pulse(0.0, omega_max))

    @classmethod
    def floored(
        cls,
        num_sites: int,
        t_max: float,
        odd: tuple[float, float],
        even: tuple[float, float],
    ) -> "PulseSchedule":
        """Imperfect-contrast schedule; ``odd`` and ``even`` are (min, max) pairs."""
        return cls(num_sites, t_max, Pulse(*odd), Pulse(*even))

    def with_t_max(self, t_max: float) -> "PulseSchedule":
        return replace(self, t_max=t_max)

    def with_scales(self, scales: Sequence[float] | None) -> "PulseSchedule":
        return replace(self, scales=None if scales is None else tuple(scales))

    def time_reversed(self) -> "PulseSchedule":
        return replace(self, reverse=not self.reverse)


def _check_times(schedule: PulseSchedule, t) -> np.ndarray:
    times = np.asarray(t, dtype=float)
    if np.any(~np.isfinite(times)) or np.any(times < 0) or np.any(times > schedule.t_max):
        raise DomainError(f"t must lie in [0, {schedule.t_max}]")
    return times


def _ramps(schedule: PulseSchedule, times: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """sin^2 and cos^2 profiles, each built from a sine so the endpoints null exactly."""
    phase = np.pi / (2.0 * schedule.t_max)
    local = schedule.t_max - times if schedule.reverse else times
    up = np.sin(phase * local) ** 2
    down = np.sin(phase * (schedule.t_max - local)) ** 2
    return up, down


def _assemble(schedule: PulseSchedule, odd_vals: np.ndarray, even_vals: np.ndarray) -> np.ndarray:
    out = np.empty(odd_vals.shape + (schedule.num_edges,))
    out[..., 0::2] = odd_vals[..., None]
    out[..., 1::2] = even_vals[..., None]
    if schedule.scales is not None:
        out *= schedule.scale_array()
    return out


def evaluate(schedule: PulseSchedule, t) -> np.ndarray:
    """Coupling vector at time ``t`` (scalar -> shape (E,), array of times -> (T, E))."""
    times = _check_times(schedule, t)
    up, down = _ramps(schedule, times)
    odd_vals = schedule.odd.omega_min + schedule.odd.swing * up
    even_vals = schedule.even.omega_min + schedule.even.swing * down
    return _assemble(schedule, odd_vals, even_vals)


def evaluate_derivative(schedule: PulseSchedule, t) -> np.ndarray:
    """Analytic d/dt of :func:`evaluate`, in ns^-2."""
    times = _check_times(schedule, t)
    rate = np.pi / (2.0 * schedule.t_max)
    local = schedule.t_max - times if schedule.reverse else times
    # d/dt sin^2(rate t) = rate sin(2 rate t); cos^2 is the negative
    slope = rate * np.sin(2.0 * rate * local)
    if schedule.reverse:
        slope = -slope
    return _assemble(schedule, schedule.odd.swing * slope, -schedule.even.swing * slope)
