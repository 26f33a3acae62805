"""Endpoint overlaps and transfer fidelity when couplings cannot be fully switched off."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .pulses import PulseSchedule


@dataclass(frozen=True)
class ContrastSpec:
    omega1_min: float
    omega1_max: float
    omega2_min: float
    omega2_max: float

    def __post_init__(self) -> None:
        for lo, hi, name in (
            (self.omega1_min, self.omega1_max, "omega1"),
            (self.omega2_min, self.omega2_max, "omega2"),
        ):
            if not (0.0 <= lo <= hi) or not hi > 0 or not math.isfinite(hi):
                raise DomainError(f"{name}: need 0 <= min <= max and max > 0, got ({lo}, {hi})")

    @classmethod
    def symmetric(cls, omega_min: float, omega_max: float) -> "ContrastSpec":
        """Both coupling groups share the same floor and ceiling."""
        return cls(omega_min, omega_max, omega_min, omega_max)

    def swapped(self) -> "ContrastSpec":
        return ContrastSpec(self.omega2_min, self.omega2_max, self.omega1_min, self.omega1_max)

    def schedule(self, num_sites: int, t_max: float) -> PulseSchedule:
        """The floored sin^2 / cos^2 schedule with these bounds."""
        return PulseSchedule.floored(
            num_sites, t_max, (self.omega1_min, self.omega1_max), (self.omega2_min, self.omega2_max)
        )


@dataclass(frozen=True)
class ContrastFidelity:
    """Exact product of squared endpoint overlaps and its leading-order estimate."""

    exact: float
    first_order_error_rate: float

    @property
    def first_order(self) -> float:
        return 1.0 - self.first_order_error_rate

    @property
    def error_rate(self) -> float:
        return 1.0 - self.exact


def _overlap(leak: float, hold: float) -> float:
    # hold^2 / sqrt(leak^4 + hold^4 + leak^2 hold^2), written in the ratio x = leak/hold
    x2 = (leak / hold) ** 2
    return 1.0 / math.sqrt(1.0 + x2 + x2 * x2)


def endpoint_overlap_initial(c: ContrastSpec) -> float:
    """<1|D0(t=0)>: the residual odd coupling leaks the dark state off site 1."""
    return _overlap(c.omega1_min, c.omega2_max)


def endpoint_overlap_final(c: ContrastSpec) -> float:
    """<D0(t=t_max)|2n+1> for the five-site symmetric schedule."""
    return _overlap(c.omega2_min, c.omega1_max)


def first_order_error_rate(c: ContrastSpec) -> float:
    return (c.omega1_min * c.omega2_min) ** 2 / (8.0 * (c.omega1_max * c.omega2_max) ** 2)


def contrast_fidelity(c: ContrastSpec) -> ContrastFidelity:
    exact = (endpoint_overlap_initial(c) * endpoint_overlap_final(c)) ** 2
    return ContrastFidelity(exact=exact, first_order_error_rate=first_order_error_rate(c))
