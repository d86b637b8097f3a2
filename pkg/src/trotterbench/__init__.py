"""Trotterized transverse-field Ising dynamics on a dense statevector
simulator, benchmarked against an exact spectral propagator."""

__version__ = "0.1.0"

from .circuit import Circuit, Gate, circuit_unitary, cnot, gate_counts, rx, rz
from .exact import build_hamiltonian, exact_propagator, exact_series
from .kernels import active_backend
from .noise import DEVICE_LIKE, NoiseParams, apply_readout_error, noisy_execute
from .observables import (
    ErrorSummary,
    MagnetizationSeries,
    error_series,
    local_magnetization_from_counts,
    local_magnetization_from_state,
    scaling_fit,
    total_magnetization,
)
from .runner import (
    RunConfig,
    RunResult,
    compare_command,
    run_command,
    scaling_command,
    sweep_command,
)
from .statevector import (
    StateVector,
    all_down_state,
    apply_gate,
    execute,
    expectation_z,
    fidelity,
    init_basis_state,
    sample_bitstrings,
)
from .trotter import (
    TfimParams,
    TrotterOrder,
    build_evolution_circuit,
    first_order_step,
    symmetric_step,
)

__all__ = [
    "__version__",
    "Circuit",
    "Gate",
    "rx",
    "rz",
    "cnot",
    "circuit_unitary",
    "gate_counts",
    "StateVector",
    "init_basis_state",
    "all_down_state",
    "apply_gate",
    "execute",
    "expectation_z",
    "fidelity",
    "sample_bitstrings",
    "TfimParams",
    "TrotterOrder",
    "first_order_step",
    "symmetric_step",
    "build_evolution_circuit",
    "build_hamiltonian",
    "exact_propagator",
    "exact_series",
    "NoiseParams",
    "DEVICE_LIKE",
    "noisy_execute",
    "apply_readout_error",
    "MagnetizationSeries",
    "ErrorSummary",
    "local_magnetization_from_state",
    "local_magnetization_from_counts",
    "total_magnetization",
    "error_series",
    "scaling_fit",
    "RunConfig",
    "RunResult",
    "run_command",
    "sweep_command",
    "compare_command",
    "scaling_command",
    "active_backend",
]
