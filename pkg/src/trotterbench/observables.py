"""Magnetization observables, error maps, RMSE summaries, and power-law fits."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .statevector import BitString, StateVector, z_expectations


@dataclass
class MagnetizationSeries:
    """Per-time, per-site magnetization M_j plus the site-averaged total M.

    `times` in units of 1/J; `local` has shape (n_times, n_sites); `total`
    is the row mean of `local`.
    """

    times: np.ndarray
    local: np.ndarray
    total: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=np.float64)
        self.local = np.asarray(self.local, dtype=np.float64)
        if self.local.ndim != 2 or self.local.shape[0] != self.times.shape[0]:
            raise ValueError("local must be (n_times, n_sites)")
        if self.total is None:
            self.total = self.local.mean(axis=1)
        else:
            self.total = np.asarray(self.total, dtype=np.float64)
            if self.total.shape != self.times.shape:
                raise ValueError("total must match times")
        if np.any(np.abs(self.local) > 1 + 1e-9) or np.any(np.abs(self.total) > 1 + 1e-9):
            raise ValueError("magnetization out of [-1, 1]")

    @property
    def n_sites(self) -> int:
        return self.local.shape[1]

    def tail(self, skip: int = 1) -> "MagnetizationSeries":
        """Drop the first `skip` time points (e.g. the t = 0 row)."""
        return MagnetizationSeries(
            self.times[skip:], self.local[skip:], self.total[skip:]
        )


@dataclass
class ErrorSummary:
    """Deviations from the exact series and their pooled RMSEs."""

    delta_local: np.ndarray  # (n_times, n_sites)
    rmse_local: float
    rmse_total: float


def local_magnetization_from_state(state: StateVector) -> np.ndarray:
    """M_j = <sigma_z_j> for every site."""
    return z_expectations(state)


def local_magnetization_from_counts(counts: dict[BitString, int]) -> np.ndarray:
    """Shot estimate M_j = (n[bit_j = 0] - n[bit_j = 1]) / shots."""
    if not counts:
        raise ValueError("counts must be nonempty")
    n_sites = len(next(iter(counts)))
    acc = np.zeros(n_sites, dtype=np.float64)
    shots = 0
    for bits, c in counts.items():
        if len(bits) != n_sites:
            raise ValueError("inconsistent bitstring lengths")
        shots += c
        for j, b in enumerate(bits):
            acc[j] += c * (1.0 - 2.0 * b)
    return acc / shots


def total_magnetization(local: np.ndarray) -> float:
    """Site average of per-site magnetizations."""
    local = np.asarray(local, dtype=np.float64)
    if local.size == 0:
        raise ValueError("local magnetizations must be nonempty")
    return float(local.mean())


def error_series(sim: MagnetizationSeries, exact: MagnetizationSeries) -> ErrorSummary:
    """Pointwise deltas sim - exact on a shared time grid, pooled into RMSEs.

    rmse_local pools over all (time, site) pairs; rmse_total over times.
    """
    if sim.times.shape != exact.times.shape or not np.allclose(
        sim.times, exact.times, rtol=0, atol=1e-12
    ):
        raise ValueError("time grids differ")
    if sim.local.shape != exact.local.shape:
        raise ValueError("site grids differ")
    delta = sim.local - exact.local
    rmse_local = float(np.sqrt(np.mean(delta**2)))
    rmse_total = float(np.sqrt(np.mean((sim.total - exact.total) ** 2)))
    return ErrorSummary(delta, rmse_local, rmse_total)


def scaling_fit(dts, errs) -> tuple[float, float]:
    """Least-squares slope and intercept of log(err) vs log(dt).

    The slope is the empirical error order of a power law err ~ c dt^k.
    """
    dts = np.asarray(dts, dtype=np.float64)
    errs = np.asarray(errs, dtype=np.float64)
    if dts.shape != errs.shape or dts.ndim != 1:
        raise ValueError("dts and errs must be 1-d arrays of equal length")
    if dts.shape[0] < 3:
        raise ValueError("need at least 3 points to fit a slope")
    if np.any(dts <= 0) or np.any(errs <= 0):
        raise ValueError("dts and errs must be positive")
    slope, intercept = np.polyfit(np.log(dts), np.log(errs), 1)
    return float(slope), float(intercept)
