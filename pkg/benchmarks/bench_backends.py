#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the three hot paths (ideal evolution with per-step readout, noisy
trajectories, and a wide random circuit) on identical inputs and checks
that both backends agree.
"""

import time

import numpy as np

from trotterbench import TfimParams, TrotterOrder, build_evolution_circuit
from trotterbench.circuit import Circuit, cnot, encode, rx, rz
from trotterbench.statevector import all_down_state
from trotterbench import kernels


def random_circuit(n_qubits, n_gates, seed):
    rng = np.random.default_rng(seed)
    circ = Circuit(n_qubits)
    for _ in range(n_gates):
        kind = rng.integers(3)
        if kind == 0:
            circ.append(rx(int(rng.integers(n_qubits)), float(rng.uniform(-3, 3))))
        elif kind == 1:
            circ.append(rz(int(rng.integers(n_qubits)), float(rng.uniform(-3, 3))))
        else:
            a, b = rng.choice(n_qubits, size=2, replace=False)
            circ.append(cnot(int(a), int(b)))
    circ.mark_step()
    return circ


def time_call(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_record(circuit, psi0, runner, repeats):
    kinds, qa, qb, theta, marks = encode(circuit)
    n = circuit.n_qubits
    out = np.empty((len(marks), n))
    amps = np.empty_like(psi0)

    def once():
        np.copyto(amps, psi0)
        runner(amps, n, kinds, qa, qb, theta, marks, out)

    return time_call(once, repeats), out.copy()


def bench_noisy(circuit, psi0, runner, trajectories, repeats):
    kinds, qa, qb, theta, marks = encode(circuit)
    n = circuit.n_qubits
    out = np.empty((len(marks), n))
    acc = np.zeros_like(out)
    amps = np.empty_like(psi0)
    rngs = [np.random.default_rng((7, t)) for t in range(trajectories)]
    draws = [(r.random(len(kinds)), r.random(len(kinds))) for r in rngs]

    def once():
        acc[:] = 0.0
        for u, choice in draws:
            np.copyto(amps, psi0)
            runner(amps, n, kinds, qa, qb, theta, marks, u, choice, 0.002, 0.02, out)
            np.add(acc, out, out=acc)

    return time_call(once, repeats), acc / trajectories


def main():
    if kernels.active_backend() != "numba":
        raise SystemExit(
            "numba backend unavailable; run without TROTTERBENCH_BACKEND=numpy"
        )

    params = TfimParams(n_spins=5, coupling=1.0, field=2.0, dt=0.2)
    workloads = []

    circ_first = build_evolution_circuit(params, 20, TrotterOrder.FIRST)
    circ_sym = build_evolution_circuit(params, 20, TrotterOrder.SYMMETRIC)
    psi5 = all_down_state(5).amps
    workloads.append(("ideal 20-step first order (N=5, 340 gates)",
                      lambda r: bench_record(circ_first, psi5, r, 50), "record"))
    workloads.append(("ideal 20-step symmetric (N=5, 560 gates)",
                      lambda r: bench_record(circ_sym, psi5, r, 50), "record"))

    wide = random_circuit(12, 2000, 3)
    psi12 = all_down_state(12).amps
    workloads.append(("random circuit (N=12, 2000 gates)",
                      lambda r: bench_record(wide, psi12, r, 5), "record"))

    workloads.append(("noisy, 200 trajectories (N=5, 560 gates)",
                      lambda r: bench_noisy(circ_sym, psi5, r, 200, 5), "noisy"))

    print(f"{'workload':<45} {'numpy':>10} {'numba':>10} {'speedup':>8}")
    for label, bench, kind in workloads:
        if kind == "record":
            np_runner, nb_runner = kernels._np_run_record, kernels._nb_run_record
        else:
            np_runner, nb_runner = kernels._np_run_noisy, kernels._nb_run_noisy
        bench(nb_runner)  # JIT warmup outside the timed region
        t_np, out_np = bench(np_runner)
        t_nb, out_nb = bench(nb_runner)
        assert np.allclose(out_np, out_nb, atol=1e-12), label
        print(f"{label:<45} {t_np * 1e3:>8.2f}ms {t_nb * 1e3:>8.2f}ms "
              f"{t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
