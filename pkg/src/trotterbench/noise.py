"""Stochastic Pauli fault emulation and classical readout errors.

Gate noise is modelled as at most one fault per gate: after every
single-qubit gate a uniformly random X/Y/Z hits its qubit with probability
p1, and after every CNOT one of the 15 non-identity two-qubit Paulis hits
the gate's pair with probability p2. Averaging exact per-step expectations
over many such trajectories reproduces the depolarizing-channel values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .circuit import Circuit, encode
from .statevector import BitString, StateVector


@dataclass(frozen=True)
class NoiseParams:
    """Fault probabilities per gate plus classical readout flip rates."""

    p1: float = 0.0  # depolarizing fault after a single-qubit gate
    p2: float = 0.0  # depolarizing fault after a CNOT
    read01: float = 0.0  # measured 0 flips to 1
    read10: float = 0.0  # measured 1 flips to 0

    def __post_init__(self):
        for name in ("p1", "p2", "read01", "read10"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {v}")

    def is_zero(self) -> bool:
        return self.p1 == self.p2 == self.read01 == self.read10 == 0.0


#: Calibration used for device-like runs; chosen so that gate faults dominate
#: the Trotter error at moderate fields. Plain config defaults, not measured
#: properties of any hardware.
DEVICE_LIKE = NoiseParams(p1=0.002, p2=0.02, read01=0.02, read10=0.02)


def noisy_execute(
    circuit: Circuit,
    initial: StateVector,
    noise: NoiseParams,
    trajectories: int,
    rng_seed: int,
) -> np.ndarray:
    """Trajectory-averaged per-qubit <sigma_z> at every step mark.

    Each trajectory replays the circuit with independently drawn faults and
    records exact expectations at the step marks; the return value has shape
    (n_steps, n_qubits). Trajectory t draws from a stream seeded by
    (rng_seed, t), so results do not depend on evaluation order.
    """
    if trajectories < 1:
        raise ValueError(f"trajectories must be >= 1, got {trajectories}")
    if circuit.n_qubits != initial.n_qubits:
        raise ValueError("circuit and state widths differ")
    kinds, qa, qb, theta, marks = encode(circuit)
    n = circuit.n_qubits
    acc = np.zeros((len(marks), n), dtype=np.float64)
    out = np.empty_like(acc)
    amps = np.empty_like(initial.amps)
    if noise.p1 == 0.0 and noise.p2 == 0.0:
        # identity channel: every trajectory is the ideal run, so return it
        # as-is instead of averaging T identical values (which would round)
        np.copyto(amps, initial.amps)
        kernels.run_gates_record(amps, n, kinds, qa, qb, theta, marks, out)
        return out
    n_gates = len(kinds)
    for t in range(trajectories):
        rng = np.random.default_rng((rng_seed, t))
        u = rng.random(n_gates)
        choice = rng.random(n_gates)
        np.copyto(amps, initial.amps)
        kernels.run_gates_noisy(
            amps, n, kinds, qa, qb, theta, marks, u, choice, noise.p1, noise.p2, out
        )
        acc += out
    acc /= trajectories
    return acc


def apply_readout_error(
    counts: dict[BitString, int], noise: NoiseParams, rng_seed: int
) -> dict[BitString, int]:
    """Flip each measured bit independently (0->1 with read01, 1->0 with
    read10); the total shot count is preserved. Outcomes are processed in
    sorted order so the result is a pure function of (counts, seed)."""
    if not counts:
        raise ValueError("counts must be nonempty")
    if noise.read01 == 0.0 and noise.read10 == 0.0:
        return dict(counts)
    rng = np.random.default_rng(rng_seed)
    flipped: dict[BitString, int] = {}
    for bits, c in sorted(counts.items()):
        bit_arr = np.array(bits, dtype=np.int64)
        thresh = np.where(bit_arr == 1, noise.read10, noise.read01)
        draws = rng.random((c, bit_arr.shape[0])) < thresh[None, :]
        outcomes = bit_arr[None, :] ^ draws
        for row in outcomes:
            key = tuple(int(b) for b in row)
            flipped[key] = flipped.get(key, 0) + 1
    return flipped


def apply_readout_to_expectations(values: np.ndarray, noise: NoiseParams) -> np.ndarray:
    """Infinite-shot readout map on <sigma_z> values:
    M -> M (1 - read01 - read10) + (read10 - read01)."""
    scale = 1.0 - noise.read01 - noise.read10
    offset = noise.read10 - noise.read01
    return values * scale + offset
