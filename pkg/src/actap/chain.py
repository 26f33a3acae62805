"""
Alternating tight-binding chain with 2n+1 degenerate sites.

Couplings are tunnelling matrix elements (TMEs) in ns^-1 with hbar = 1, so
1 GHz in the usual device language is 1 ns^-1 here.  Edge k (0-based) joins
site k+1 and site k+2; even k are the "odd" couplings Omega_1, Omega_3, ...
and odd k the "even" couplings Omega_2, Omega_4, ...

    H = sum_k  Omega_k (|k+1><k+2| + h.c.)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionError, DomainError


@dataclass(frozen=True)
class ChainSpec:
    """Chain of ``2 * n_half + 1`` sites with per-edge coupling bounds (ns^-1)."""

    n_half: int
    coupling_bounds: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if int(self.n_half) != self.n_half or self.n_half < 1:
            raise DomainError(f"n_half must be a positive integer, got {self.n_half!r}")
        bounds = tuple((float(lo), float(hi)) for lo, hi in self.coupling_bounds)
        if len(bounds) != self.num_sites - 1:
            raise DimensionError(
                f"{self.num_sites} sites need {self.num_sites - 1} coupling bounds, got {len(bounds)}"
            )
        for k, (lo, hi) in enumerate(bounds):
            if not (0.0 <= lo <= hi):
                raise DomainError(f"coupling {k}: need 0 <= omega_min <= omega_max, got ({lo}, {hi})")
        if not any(hi > 0 for _, hi in bounds):
            raise DomainError("at least one coupling must have omega_max > 0")
        object.__setattr__(self, "n_half", int(self.n_half))
        object.__setattr__(self, "coupling_bounds", bounds)

    @property
    def num_sites(self) -> int:
        return 2 * self.n_half + 1

    @property
    def num_edges(self) -> int:
        return 2 * self.n_half

    def admits(self, edge_bounds: Sequence[tuple[float, float]], rel_tol: float = 1e-12) -> bool:
        """True when every (lo, hi) range fits inside this chain's coupling bounds."""
        if len(edge_bounds) != self.num_edges:
            return False
        for (lo, hi), (blo, bhi) in zip(edge_bounds, self.coupling_bounds):
            slack = rel_tol * max(1.0, bhi)
            if lo < blo - slack or hi > bhi + slack:
                return False
        return True

    @classmethod
    def alternating(
        cls,
        num_sites: int,
        omega_max: float,
        omega_min: float = 0.0,
        *,
        even_max: float | None = None,
        even_min: float | None = None,
    ) -> "ChainSpec":
        """A-B chain: odd couplings bounded by (omega_min, omega_max), even ones by
        (even_min, even_max), which default to the odd bounds."""
        n_half = half_length(num_sites)
        odd = (omega_min, omega_max)
        even = (
            omega_min if even_min is None else even_min,
            omega_max if even_max is None else even_max,
        )
        return cls(n_half, tuple(odd if k % 2 == 0 else even for k in range(2 * n_half)))


def half_length(num_sites: int) -> int:
    """Return n for a chain of 2n+1 sites; even or too-short chains are rejected."""
    if int(num_sites) != num_sites or num_sites < 3 or num_sites % 2 == 0:
        raise DomainError(f"num_sites must be odd and >= 3, got {num_sites!r}")
    return (int(num_sites) - 1) // 2


def as_couplings(omegas: Sequence[float] | np.ndarray, num_sites: int | None = None) -> np.ndarray:
    """Validate a coupling vector and return it as a float array."""
    values = np.asarray(omegas, dtype=float)
    if values.ndim != 1:
        raise DimensionError(f"coupling vector must be 1-D, got shape {values.shape}")
    if num_sites is None:
        half_length(values.size + 1)
    elif values.size != num_sites - 1:
        raise DimensionError(f"{num_sites} sites need {num_sites - 1} couplings, got {values.size}")
    if not np.all(np.isfinite(values)):
        raise DomainError("couplings must be finite")
    if np.any(values < 0):
        raise DomainError(f"couplings must be non-negative, got {values.tolist()}")
    return values


def tridiagonal(offdiag: np.ndarray) -> np.ndarray:
    """Symmetric zero-diagonal matrix with the given first off-diagonal.

    No sign check, so it also serves for dH/dt whose entries may be negative.
    Works on stacks: ``offdiag`` of shape (..., N-1) gives (..., N, N).
    """
    offdiag = np.asarray(offdiag, dtype=float)
    n = offdiag.shape[-1] + 1
    out = np.zeros(offdiag.shape[:-1] + (n, n))
    idx = np.arange(n - 1)
    out[..., idx, idx + 1] = offdiag
    out[..., idx + 1, idx] = offdiag
    return out


def build_hamiltonian(omegas: Sequence[float] | np.ndarray, spec: ChainSpec | None = None) -> np.ndarray:
    """Instantaneous chain Hamiltonian (ns^-1) for the coupling vector ``omegas``."""
    values = as_couplings(omegas, None if spec is None else spec.num_sites)
    return tridiagonal(values)
