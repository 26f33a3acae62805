"""
Eigensystems of the chain Hamiltonian.

``diagonalize`` is a dense symmetric solve (chains are at most a few hundred
sites).  ``symmetric5_eigensystem`` gives the closed-form five-site result
for uniform odd coupling w1 and uniform even coupling w2:

    E0 = 0,  E+- = +-sqrt(w1^2 - w1 w2 + w2^2),  E2+- = +-sqrt(w1^2 + w1 w2 + w2^2)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, DomainError, ProtocolStateError

ZERO_TOL = 1e-10


@dataclass(frozen=True)
class EigenSystem:
    """Ascending eigenvalues (ns^-1) and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def coupling_norm(self) -> float:
        # ||H||_F^2 = sum E^2 = 2 ||Omega||^2 for a zero-diagonal tridiagonal H
        return float(np.sqrt(np.sum(self.eigenvalues**2) / 2.0))

    def zero_tolerance(self) -> float:
        return ZERO_TOL * max(1.0, self.coupling_norm)

    def zero_index(self) -> int:
        """Index of the dark (zero-energy) state."""
        k = int(np.argmin(np.abs(self.eigenvalues)))
        if abs(self.eigenvalues[k]) > self.zero_tolerance():
            raise ProtocolStateError(
                f"no zero eigenvalue: smallest |E| is {abs(self.eigenvalues[k]):.3e}"
            )
        return k


def _fix_signs(vectors: np.ndarray, rel_tol: float = 1e-10) -> np.ndarray:
    out = vectors.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        big = np.nonzero(np.abs(col) > rel_tol * np.abs(col).max())[0]
        if big.size and col[big[0]].real < 0:
            out[:, k] = -col
    return out


def diagonalize(h: np.ndarray) -> EigenSystem:
    h = np.asarray(h, dtype=float)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DomainError(f"Hamiltonian must be square, got shape {h.shape}")
    if not np.array_equal(h, h.T):
        raise DomainError("Hamiltonian must be symmetric")
    w, v = np.linalg.eigh(h)
    return EigenSystem(w, _fix_signs(v))


def symmetric5_eigensystem(omega1: float, omega2: float) -> EigenSystem:
    """Analytic eigenpairs of the five-site chain with couplings (w1, w2, w1, w2)."""
    a, b = float(omega1), float(omega2)
    if a < 0 or b < 0:
        raise DomainError(f"couplings must be non-negative, got ({a}, {b})")
    if a == 0 and b == 0:
        raise DegenerateInputError("symmetric eigensystem undefined for zero couplings")
    s_minus = np.sqrt(a * a - a * b + b * b)
    s_plus = np.sqrt(a * a + a * b + b * b)

    d0 = np.array([b * b, 0.0, -a * b, 0.0, a * a]) / np.sqrt(a**4 + a * a * b * b + b**4)

    def d_pm(sign: float) -> np.ndarray:
        return np.array([-a, -sign * s_minus, a - b, sign * s_minus, b]) / (2.0 * s_minus)

    def d2_pm(sign: float) -> np.ndarray:
        return np.array([a, sign * s_plus, a + b, sign * s_plus, b]) / (2.0 * s_plus)

    eigenvalues = np.array([-s_plus, -s_minus, 0.0, s_minus, s_plus])
    vectors = np.column_stack([d2_pm(-1.0), d_pm(-1.0), d0, d_pm(1.0), d2_pm(1.0)])
    return EigenSystem(eigenvalues, _fix_signs(vectors))


def gap_to_nearest(eigs: EigenSystem) -> float:
    """Smallest |E| among eigenvalues that are not zero modes."""
    eigs.zero_index()
    mags = np.abs(eigs.eigenvalues)
    nonzero = mags[mags > eigs.zero_tolerance()]
    if nonzero.size == 0:
        raise ProtocolStateError("spectrum is entirely zero; no gap")
    return float(nonzero.min())
