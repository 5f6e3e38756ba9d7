# -*- coding: utf-8 -*-

"""
Exact quantum evolution of two equal clouds of N quanta on the collective
ladder |i>, i = 0..N, where i counts converted pairs.

The Hamiltonian is tridiagonal, with off-diagonal elements i (N - i + 1)
and an optional flavor-diagonal term -(lambda/2) (N - 2i)^2. Both are
divided by N so time is measured in units of (n g)^-1, the same axis the
mean-field and classical models use.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed
from scipy.linalg import LinAlgError, eigh_tridiagonal, expm
from scipy.optimize import brentq

from pymathics.flavor.core import (
    ParameterError,
    ScalingFit,
    SolverError,
    TimeGrid,
    Trajectory,
    first_zero_crossing,
    fit_log_scaling,
    integrate,
)
from pymathics.flavor.stability import analyze_lambda, turnover_predictions

# Don't consider this for user documentation
no_doc = True

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-9
QUANTUM_DT = 1e-2
DEFAULT_SCAN_HORIZON = 20.0
EVOLUTION_METHODS = ("spectral", "stepping", "dense")

# Number of sample times propagated per matrix product.
_CHUNK = 256


@dataclass(frozen=True, eq=False)
class LadderHamiltonian:
    n: int
    lam: float
    offdiag: np.ndarray = field(repr=False)
    diag: np.ndarray = field(repr=False)

    def __post_init__(self):
        if len(self.offdiag) != self.n or len(self.diag) != self.n + 1:
            raise ParameterError("ladder arrays do not match the pair count")

    def scaled(self) -> Tuple[np.ndarray, np.ndarray]:
        """(diagonal, off-diagonal) in units of (n g)^-1 time."""
        return self.diag / self.n, self.offdiag / self.n

    def dense(self) -> np.ndarray:
        d, e = self.scaled()
        return np.diag(d) + np.diag(e, 1) + np.diag(e, -1)

    def apply(self, psi: np.ndarray) -> np.ndarray:
        """Scaled H acting on the last axis of ``psi``."""
        d, e = self.scaled()
        result = d * psi
        result[..., :-1] += e * psi[..., 1:]
        result[..., 1:] += e * psi[..., :-1]
        return result

    @property
    def levels(self) -> np.ndarray:
        """sigma3 on each ladder state, N - 2i."""
        return (self.n - 2 * np.arange(self.n + 1)).astype(float)

    @property
    def cloud_b_levels(self) -> np.ndarray:
        """
        tau3 on each ladder state from cloud B's own occupations. B starts
        at tau3 = -N, so tau3 counts photons minus gravitons, and after i
        conversions B holds i photons and N - i gravitons.
        """
        photons = np.arange(self.n + 1, dtype=float)
        gravitons = self.n - photons
        return photons - gravitons


@dataclass(frozen=True, eq=False)
class LadderState:
    amps: np.ndarray

    def __post_init__(self):
        norm = float(np.sum(np.abs(self.amps) ** 2))
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise ParameterError(f"ladder state is not normalized (norm {norm:.12g})")

    @classmethod
    def all_gravitons(cls, n: int) -> "LadderState":
        amps = np.zeros(n + 1, dtype=complex)
        amps[0] = 1.0
        return cls(amps)

    @property
    def n(self) -> int:
        return len(self.amps) - 1

    def zeta(self) -> float:
        levels = self.n - 2 * np.arange(self.n + 1)
        return float(np.sum(np.abs(self.amps) ** 2 * levels) / self.n)


def build_ladder(n: int, lam: float = 0.0) -> LadderHamiltonian:
    if int(n) != n or n < 1:
        raise ParameterError(f"the ladder needs at least one pair, got n={n}")
    n = int(n)
    i = np.arange(1, n + 1, dtype=float)
    offdiag = i * (n - i + 1)
    levels = n - 2 * np.arange(n + 1, dtype=float)
    diag = -(lam / 2.0) * levels**2
    return LadderHamiltonian(n=n, lam=float(lam), offdiag=offdiag, diag=diag)


def _observables(h: LadderHamiltonian, psi: np.ndarray) -> dict:
    """zeta and audit channels for a block of states shaped (times, N+1)."""
    probs = np.abs(psi) ** 2
    sigma3 = probs @ h.levels
    tau3 = probs @ h.cloud_b_levels
    energy = np.real(np.sum(np.conj(psi) * h.apply(psi), axis=-1))
    return {
        "zeta": sigma3 / h.n,
        "norm": probs.sum(axis=-1),
        "energy": energy,
        "sigma3_plus_tau3": sigma3 + tau3,
    }


def _trajectory(h: LadderHamiltonian, times: np.ndarray, blocks, label: str) -> Trajectory:
    channels = {}
    for block in blocks:
        for name, values in _observables(h, block).items():
            channels.setdefault(name, []).append(values)
    merged = {name: np.concatenate(values) for name, values in channels.items()}
    zeta = merged.pop("zeta")
    return Trajectory(times, zeta, audits=merged, label=label)


class LadderPropagator:
    """
    Eigensystem of a ladder Hamiltonian, from which the all-graviton state
    can be propagated exactly to any time.
    """

    def __init__(self, h: LadderHamiltonian):
        self.hamiltonian = h
        d, e = h.scaled()
        try:
            energies, vectors = eigh_tridiagonal(d, e)
        except (LinAlgError, ValueError) as exc:
            raise SolverError(
                f"tridiagonal eigensolver failed for N={h.n}, lambda={h.lam}: {exc}"
            ) from exc
        if not (np.all(np.isfinite(energies)) and np.all(np.isfinite(vectors))):
            raise SolverError(
                f"non-finite eigensystem for N={h.n}, lambda={h.lam} "
                f"(spectral radius {np.max(np.abs(d)) + 2 * np.max(e):.3g})"
            )
        logger.debug("ladder N=%d lambda=%g diagonalized", h.n, h.lam)
        self.energies = energies
        self.vectors = vectors
        # Overlaps of the eigenvectors with |0>.
        self._overlap = vectors[0, :].astype(complex)

    def amplitudes(self, times) -> np.ndarray:
        times = np.atleast_1d(np.asarray(times, dtype=float))
        phases = np.exp(-1j * np.outer(times, self.energies)) * self._overlap
        return phases @ self.vectors.T

    def zeta_at(self, t: float) -> float:
        probs = np.abs(self.amplitudes(t)[0]) ** 2
        return float(probs @ self.hamiltonian.levels / self.hamiltonian.n)

    def trajectory(self, grid: TimeGrid) -> Trajectory:
        times = grid.times()
        blocks = (
            self.amplitudes(times[start : start + _CHUNK])
            for start in range(0, len(times), _CHUNK)
        )
        return _trajectory(self.hamiltonian, times, blocks, self._label("spectral"))

    def refined_crossing(self, traj: Trajectory) -> Optional[float]:
        """First zero crossing of zeta, solved exactly inside the bracketing samples."""
        estimate = first_zero_crossing(traj)
        if estimate is None:
            return None
        k = int(np.searchsorted(traj.times, estimate, side="right")) - 1
        if k >= len(traj) - 1 or traj.zeta[k] == 0:
            return estimate
        a, b = traj.times[k], traj.times[k + 1]
        za, zb = self.zeta_at(a), self.zeta_at(b)
        if za * zb > 0:
            return estimate
        return float(brentq(self.zeta_at, a, b, xtol=1e-12))

    def _label(self, method: str) -> str:
        h = self.hamiltonian
        return f"quantum N={h.n} lambda={h.lam:g} ({method})"


def evolve_dense(h: LadderHamiltonian, grid: TimeGrid) -> Trajectory:
    """Brute-force propagation with the dense one-step matrix exponential."""
    step = expm(-1j * h.dense() * grid.dt)
    times = grid.times()
    psi = LadderState.all_gravitons(h.n).amps
    states = np.empty((len(times), h.n + 1), dtype=complex)
    states[0] = psi
    for k in range(1, len(times)):
        psi = step @ psi
        states[k] = psi
    return _trajectory(h, times, [states], f"quantum N={h.n} lambda={h.lam:g} (dense)")


def evolve_ladder(
    h: LadderHamiltonian, grid: TimeGrid, method: str = "spectral"
) -> Trajectory:
    """
    zeta(tau) for the all-graviton initial state, with norm, energy and
    sigma3 + tau3 audit channels.

    ``method`` selects the exact eigendecomposition (default), Runge-Kutta
    stepping of the Schroedinger equation, or the dense matrix exponential.
    """
    if method == "spectral":
        return LadderPropagator(h).trajectory(grid)
    if method == "dense":
        return evolve_dense(h, grid)
    if method == "stepping":
        times, states = integrate(
            lambda _t, psi: -1j * h.apply(psi),
            LadderState.all_gravitons(h.n).amps,
            grid,
        )
        return _trajectory(h, times, [states], f"quantum N={h.n} lambda={h.lam:g} (stepping)")
    raise ParameterError(f"unknown evolution method {method!r}; use one of {EVOLUTION_METHODS}")


def quantum_break_time(n: int, lam: float, grid: TimeGrid) -> Optional[float]:
    propagator = LadderPropagator(build_ladder(n, lam))
    return propagator.refined_crossing(propagator.trajectory(grid))


@dataclass
class BreakTimeScan:
    lam: float
    times: List[Tuple[int, Optional[float]]]
    excluded: List[int]
    fit: Optional[ScalingFit]


def break_time_scan(
    ns: Sequence[int],
    lam: float = 0.0,
    grid: Optional[TimeGrid] = None,
    n_jobs: int = 1,
) -> BreakTimeScan:
    """
    First zero-crossing times for each N, fitted against ln N.

    Runs that never cross within ``grid`` are excluded from the fit and
    listed in ``excluded``. The fit is None when fewer than three distinct
    N values remain.
    """
    ns = [int(n) for n in ns]
    if any(n < 2 for n in ns):
        raise ParameterError("break-time scans need N >= 2")
    if grid is None:
        grid = TimeGrid.up_to(DEFAULT_SCAN_HORIZON, QUANTUM_DT)

    crossings = Parallel(n_jobs=n_jobs)(
        delayed(quantum_break_time)(n, lam, grid) for n in ns
    )
    times = list(zip(ns, crossings))
    excluded = [n for n, t in times if t is None]
    if excluded:
        logger.warning("no zero crossing before %g for N=%s", grid.t_end, excluded)

    points = [(n, t) for n, t in times if t is not None]
    fit = None
    if len(points) >= 3 and len({n for n, _ in points}) >= 2:
        fit = fit_log_scaling(points)
    else:
        logger.info("not enough distinct crossings to fit a log-N law")
    return BreakTimeScan(lam=float(lam), times=times, excluded=excluded, fit=fit)


@dataclass(frozen=True)
class TurnoverProbe:
    lam: float
    turnover: Optional[float]
    min_zeta: float
    horizon: float
    classification: str
    linear_prediction: Optional[float]
    inverse_prediction: Optional[float]

    @property
    def turns_over(self) -> bool:
        return self.turnover is not None


def lambda_turnover_probe(
    n: int,
    lambdas: Sequence[float],
    horizon_factor: float = 5.0,
    dt: float = QUANTUM_DT,
) -> List[TurnoverProbe]:
    """
    For each lambda, whether zeta turns over within ``horizon_factor`` times
    the lambda = 0 crossing time, next to the linear-stability class and
    the two turnover-time predictions scaled from the lambda = 0 crossing.
    """
    if n < 2:
        raise ParameterError("the turnover probe needs N >= 2")
    if horizon_factor < 1:
        raise ParameterError("horizon_factor must be at least 1")
    base = quantum_break_time(n, 0.0, TimeGrid.up_to(2 * np.log(n) + 5, dt))
    if base is None:
        raise SolverError(f"no lambda=0 crossing found for N={n}")
    horizon = horizon_factor * base
    grid = TimeGrid.up_to(horizon, dt)

    probes = []
    for lam in lambdas:
        propagator = LadderPropagator(build_ladder(n, lam))
        traj = propagator.trajectory(grid)
        linear, inverse = turnover_predictions(lam, base)
        probes.append(
            TurnoverProbe(
                lam=float(lam),
                turnover=propagator.refined_crossing(traj),
                min_zeta=float(np.min(traj.zeta)),
                horizon=float(horizon),
                classification=analyze_lambda(lam).classification,
                linear_prediction=linear,
                inverse_prediction=inverse,
            )
        )
    return probes
