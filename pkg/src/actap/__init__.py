"""Coherent tunnelling adiabatic passage (CTAP) on alternating odd-length chains."""

from .adiabaticity import (
    AdiabaticityTrace,
    adiabaticity_general,
    adiabaticity_peak_closed_form,
    adiabaticity_trace,
    required_tmax,
)
from .chain import ChainSpec, build_hamiltonian
from .contrast import (
    ContrastFidelity,
    ContrastSpec,
    contrast_fidelity,
    endpoint_overlap_final,
    endpoint_overlap_initial,
    first_order_error_rate,
)
from .darkstate import dark_state, dark_state_overlap
from .errors import (
    ActapError,
    DegenerateInputError,
    DegenerateSpectrumError,
    DimensionError,
    DomainError,
    IntegratorError,
    ProtocolStateError,
)
from .evolution import EvolutionTrace, propagate, site_state, transfer_fidelity_vs_tmax
from .pulses import Pulse, PulseSchedule, evaluate, evaluate_derivative
from .robustness import DisorderSample, DisorderSpec, sample_disordered_run
from .spectrum import EigenSystem, diagonalize, gap_to_nearest, symmetric5_eigensystem

__version__ = "0.1.0"
