"""Independent oracles shared by the test modules.

None of these reuse the package's solvers: null spaces come from an SVD,
eigenvalues from the general (non-symmetric) eigenvalue routine, and time
evolution from an adaptive Runge-Kutta integrator.
"""

import numpy as np
import pytest
from scipy.integrate import solve_ivp


def dense_hamiltonian(omegas):
    omegas = np.asarray(omegas, dtype=float)
    return np.diag(omegas, 1) + np.diag(omegas, -1)


def svd_null_vector(omegas):
    """Right-singular vector of the smallest singular value, phase fixed."""
    _, _, vh = np.linalg.svd(dense_hamiltonian(omegas))
    v = vh[-1]
    k = np.flatnonzero(np.abs(v) > 1e-12)[0]
    return v * np.sign(v[k])


def general_eigenvalues(omegas):
    return np.sort(np.linalg.eigvals(dense_hamiltonian(omegas)).real)


def closed_form_a5(w1, w2, dw1, dw2):
    """Five-site symmetric adiabaticity, written out in full."""
    num = dw1 * w2**2 - dw2 * w1**2 + w1 * w2 * (dw1 - dw2)
    den = 2 * np.sqrt(w1**4 + w1**2 * w2**2 + w2**4) * (w1**2 - w1 * w2 + w2**2)
    return abs(num) / den


def ideal_couplings(num_sites, omega_max, t_max, t):
    s = np.sin(np.pi * t / (2 * t_max)) ** 2
    c = np.cos(np.pi * t / (2 * t_max)) ** 2
    return np.array([omega_max * (s if k % 2 == 0 else c) for k in range(num_sites - 1)])


def rk_oracle(num_sites, omega_max, t_max, t_eval, psi0=None):
    """Populations from DOP853 on the ideal schedule, real/imag split."""
    n = num_sites
    psi0 = np.eye(n)[0] if psi0 is None else psi0

    def rhs(t, y):
        psi = y[:n] + 1j * y[n:]
        d = -1j * dense_hamiltonian(ideal_couplings(n, omega_max, t_max, t)) @ psi
        return np.concatenate([d.real, d.imag])

    sol = solve_ivp(rhs, (0, t_max), np.concatenate([psi0.real, psi0.imag]),
                    method="DOP853", t_eval=t_eval, rtol=1e-11, atol=1e-12)
    psi = sol.y[:n] + 1j * sol.y[n:]
    return (np.abs(psi) ** 2).T


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
