"""Amplitude-update kernels: numba-jitted hot path with a pure-numpy fallback.

Backend selection, checked once at import:
  TROTTERBENCH_BACKEND=numpy   force the pure-numpy path
  TROTTERBENCH_BACKEND=numba   require numba (ImportError if missing)
  unset                        numba when importable, else numpy

Both paths implement identical arithmetic on strided amplitude pairs;
no full-matrix products ever happen here. All kernels mutate the state
array in place.

Gate encoding (see circuit.encode): kinds 0=RX, 1=RZ, 2=CNOT; `qa` is the
rotation qubit or CNOT control, `qb` the CNOT target. Pauli codes for
fault insertion: 1=X, 2=Y, 3=Z.
"""

from __future__ import annotations

import math
import os

import numpy as np

_env = os.environ.get("TROTTERBENCH_BACKEND", "").strip().lower()
if _env not in ("", "numpy", "numba"):
    raise ValueError(f"TROTTERBENCH_BACKEND must be 'numpy' or 'numba', got {_env!r}")

if _env == "numpy":
    _HAVE_NUMBA = False
else:
    try:
        from numba import njit

        _HAVE_NUMBA = True
    except ImportError:
        if _env == "numba":
            raise
        _HAVE_NUMBA = False


def active_backend() -> str:
    return "numba" if _HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------- numpy path

def _np_pairs(n_states: int, q: int):
    g = np.arange(n_states >> 1)
    i0 = ((g >> q) << (q + 1)) | (g & ((1 << q) - 1))
    return i0, i0 | (1 << q)


def _np_apply_rx(amps, q, theta):
    c = math.cos(theta / 2)
    s = math.sin(theta / 2)
    i0, i1 = _np_pairs(amps.shape[0], q)
    a0 = amps[i0].copy()
    a1 = amps[i1].copy()
    amps[i0] = c * a0 - 1j * s * a1
    amps[i1] = -1j * s * a0 + c * a1


def _np_apply_rz(amps, q, theta):
    i0, i1 = _np_pairs(amps.shape[0], q)
    amps[i0] = amps[i0] * np.exp(-0.5j * theta)
    amps[i1] = amps[i1] * np.exp(0.5j * theta)


def _np_apply_cnot(amps, control, target):
    i0, i1 = _np_pairs(amps.shape[0], target)
    on = ((i0 >> control) & 1) == 1
    sel0 = i0[on]
    sel1 = i1[on]
    a = amps[sel0].copy()
    amps[sel0] = amps[sel1]
    amps[sel1] = a


def _np_apply_pauli(amps, q, code):
    i0, i1 = _np_pairs(amps.shape[0], q)
    if code == 1:
        a = amps[i0].copy()
        amps[i0] = amps[i1]
        amps[i1] = a
    elif code == 2:
        a0 = amps[i0].copy()
        amps[i0] = -1j * amps[i1]
        amps[i1] = 1j * a0
    elif code == 3:
        amps[i1] = -amps[i1]


def _np_apply_encoded(amps, kind, a, b, theta):
    if kind == 0:
        _np_apply_rx(amps, a, theta)
    elif kind == 1:
        _np_apply_rz(amps, a, theta)
    else:
        _np_apply_cnot(amps, a, b)


def _np_z_expectations(amps, n_qubits, out):
    probs = amps.real * amps.real + amps.imag * amps.imag
    idx = np.arange(amps.shape[0])
    for j in range(n_qubits):
        signs = 1.0 - 2.0 * ((idx >> j) & 1)
        out[j] = float(probs @ signs)


def _np_run(amps, n_qubits, kinds, qa, qb, theta):
    for i in range(kinds.shape[0]):
        _np_apply_encoded(amps, kinds[i], qa[i], qb[i], theta[i])


def _np_run_record(amps, n_qubits, kinds, qa, qb, theta, marks, out):
    mp = 0
    for i in range(kinds.shape[0]):
        _np_apply_encoded(amps, kinds[i], qa[i], qb[i], theta[i])
        while mp < marks.shape[0] and marks[mp] == i + 1:
            _np_z_expectations(amps, n_qubits, out[mp])
            mp += 1


def _np_run_noisy(amps, n_qubits, kinds, qa, qb, theta, marks, u, choice, p1, p2, out):
    mp = 0
    for i in range(kinds.shape[0]):
        kind = kinds[i]
        _np_apply_encoded(amps, kind, qa[i], qb[i], theta[i])
        if kind == 2:
            if u[i] < p2:
                f = int(choice[i] * 15.0) + 1  # 1..15, never (I, I)
                pc = f >> 2
                pt = f & 3
                if pc:
                    _np_apply_pauli(amps, qa[i], pc)
                if pt:
                    _np_apply_pauli(amps, qb[i], pt)
        elif u[i] < p1:
            _np_apply_pauli(amps, qa[i], int(choice[i] * 3.0) + 1)
        while mp < marks.shape[0] and marks[mp] == i + 1:
            _np_z_expectations(amps, n_qubits, out[mp])
            mp += 1


# ---------------------------------------------------------------- numba path

if _HAVE_NUMBA:

    @njit(cache=True)
    def _nb_apply_rx(amps, q, theta):
        c = math.cos(theta / 2)
        s = math.sin(theta / 2)
        tk = 1 << q
        for g in range(amps.shape[0] >> 1):
            i0 = ((g >> q) << (q + 1)) | (g & (tk - 1))
            i1 = i0 | tk
            a0 = amps[i0]
            a1 = amps[i1]
            amps[i0] = c * a0 - 1j * s * a1
            amps[i1] = -1j * s * a0 + c * a1

    @njit(cache=True)
    def _nb_apply_rz(amps, q, theta):
        f0 = complex(math.cos(theta / 2), -math.sin(theta / 2))
        f1 = f0.conjugate()
        tk = 1 << q
        for g in range(amps.shape[0] >> 1):
            i0 = ((g >> q) << (q + 1)) | (g & (tk - 1))
            i1 = i0 | tk
            amps[i0] = amps[i0] * f0
            amps[i1] = amps[i1] * f1

    @njit(cache=True)
    def _nb_apply_cnot(amps, control, target):
        tk = 1 << target
        for g in range(amps.shape[0] >> 1):
            i0 = ((g >> target) << (target + 1)) | (g & (tk - 1))
            if (i0 >> control) & 1:
                i1 = i0 | tk
                a = amps[i0]
                amps[i0] = amps[i1]
                amps[i1] = a

    @njit(cache=True)
    def _nb_apply_pauli(amps, q, code):
        tk = 1 << q
        for g in range(amps.shape[0] >> 1):
            i0 = ((g >> q) << (q + 1)) | (g & (tk - 1))
            i1 = i0 | tk
            if code == 1:
                a = amps[i0]
                amps[i0] = amps[i1]
                amps[i1] = a
            elif code == 2:
                a = amps[i0]
                amps[i0] = -1j * amps[i1]
                amps[i1] = 1j * a
            else:
                amps[i1] = -amps[i1]

    @njit(cache=True)
    def _nb_apply_encoded(amps, kind, a, b, theta):
        if kind == 0:
            _nb_apply_rx(amps, a, theta)
        elif kind == 1:
            _nb_apply_rz(amps, a, theta)
        else:
            _nb_apply_cnot(amps, a, b)

    @njit(cache=True)
    def _nb_z_expectations(amps, n_qubits, out):
        for j in range(n_qubits):
            out[j] = 0.0
        for b in range(amps.shape[0]):
            a = amps[b]
            p = a.real * a.real + a.imag * a.imag
            for j in range(n_qubits):
                if (b >> j) & 1:
                    out[j] -= p
                else:
                    out[j] += p

    @njit(cache=True)
    def _nb_run(amps, n_qubits, kinds, qa, qb, theta):
        for i in range(kinds.shape[0]):
            _nb_apply_encoded(amps, kinds[i], qa[i], qb[i], theta[i])

    @njit(cache=True)
    def _nb_run_record(amps, n_qubits, kinds, qa, qb, theta, marks, out):
        mp = 0
        for i in range(kinds.shape[0]):
            _nb_apply_encoded(amps, kinds[i], qa[i], qb[i], theta[i])
            while mp < marks.shape[0] and marks[mp] == i + 1:
                _nb_z_expectations(amps, n_qubits, out[mp])
                mp += 1

    @njit(cache=True)
    def _nb_run_noisy(
        amps, n_qubits, kinds, qa, qb, theta, marks, u, choice, p1, p2, out
    ):
        mp = 0
        for i in range(kinds.shape[0]):
            kind = kinds[i]
            _nb_apply_encoded(amps, kind, qa[i], qb[i], theta[i])
            if kind == 2:
                if u[i] < p2:
                    f = int(choice[i] * 15.0) + 1
                    pc = f >> 2
                    pt = f & 3
                    if pc:
                        _nb_apply_pauli(amps, qa[i], pc)
                    if pt:
                        _nb_apply_pauli(amps, qb[i], pt)
            elif u[i] < p1:
                _nb_apply_pauli(amps, qa[i], int(choice[i] * 3.0) + 1)
            while mp < marks.shape[0] and marks[mp] == i + 1:
                _nb_z_expectations(amps, n_qubits, out[mp])
                mp += 1


# ------------------------------------------------------------- public names

if _HAVE_NUMBA:
    apply_gate_encoded = _nb_apply_encoded
    apply_pauli = _nb_apply_pauli
    run_gates = _nb_run
    run_gates_record = _nb_run_record
    run_gates_noisy = _nb_run_noisy
    _z_expectations = _nb_z_expectations
else:
    apply_gate_encoded = _np_apply_encoded
    apply_pauli = _np_apply_pauli
    run_gates = _np_run
    run_gates_record = _np_run_record
    run_gates_noisy = _np_run_noisy
    _z_expectations = _np_z_expectations


def z_expectations(amps: np.ndarray, n_qubits: int) -> np.ndarray:
    """Per-qubit <sigma_z> of a normalized amplitude array."""
    out = np.empty(n_qubits, dtype=np.float64)
    _z_expectations(amps, n_qubits, out)
    return out
