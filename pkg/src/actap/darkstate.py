"""Closed-form zero-energy (dark) state of the alternating chain."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .chain import as_couplings
from .errors import DegenerateInputError, DomainError


def _phase_fix(vec: np.ndarray, rel_tol: float = 1e-12) -> np.ndarray:
    """Rotate the global phase so the first non-negligible entry is positive real."""
    mags = np.abs(vec)
    big = np.nonzero(mags > rel_tol * mags.max())[0]
    if big.size == 0:
        return vec
    first = vec[big[0]]
    return vec * (np.abs(first) / first)


def dark_amplitudes(omegas: Sequence[float] | np.ndarray) -> np.ndarray:
    """Unnormalised odd-site amplitudes, division free.

    Site 2j+1 (1-based) gets (-1)^j * Omega_1 Omega_3 ... Omega_{2j-1}
    * Omega_{2j+2} ... Omega_{2n}: the j leading odd couplings times the
    n-j trailing even couplings.
    """
    values = as_couplings(omegas)
    scale = values.max()
    if scale > 0:
        # only ratios matter; rescaling keeps long products in range
        values = values / scale
    odd, even = values[0::2], values[1::2]
    n = odd.size
    lead = np.concatenate(([1.0], np.cumprod(odd)))
    trail = np.concatenate((np.cumprod(even[::-1])[::-1], [1.0]))
    signs = np.where(np.arange(n + 1) % 2 == 0, 1.0, -1.0)
    return signs * lead * trail


def dark_state(omegas: Sequence[float] | np.ndarray) -> np.ndarray:
    """Normalised dark state |D0> as a complex vector over the 2n+1 sites.

    Even-site amplitudes are exactly zero and the first nonzero amplitude is
    positive.  Raises :class:`DegenerateInputError` when every odd-site term
    vanishes (the null space is then not one-dimensional).
    """
    amps = dark_amplitudes(omegas)
    norm = np.sqrt(np.sum(amps**2))
    if norm == 0.0:
        raise DegenerateInputError(f"dark state undefined for couplings {np.asarray(omegas).tolist()}")
    state = np.zeros(2 * amps.size - 1, dtype=complex)
    state[0::2] = amps / norm
    return _phase_fix(state)


def dark_state_overlap(omegas: Sequence[float] | np.ndarray, site: int) -> float:
    """|<site|D0>| for a 1-based site index."""
    state = dark_state(omegas)
    if int(site) != site or not 1 <= site <= state.size:
        raise DomainError(f"site must be in 1..{state.size}, got {site!r}")
    return float(abs(state[int(site) - 1]))
