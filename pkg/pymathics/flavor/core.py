# -*- coding: utf-8 -*-

"""
Shared numerics: time grids, fixed-step integration, trajectories,
zero crossings and logarithmic scaling fits.

All times are dimensionless, in units of (n g)^-1.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Optional, Tuple

import numpy as np
from scipy.stats import linregress

# Don't consider this for user documentation
no_doc = True

logger = logging.getLogger(__name__)

DEFAULT_DT = 1e-3
ZETA_TOLERANCE = 1e-6


class FlavorError(Exception):
    """Base class for errors raised by the flavor-conversion solvers."""


class ParameterError(FlavorError, ValueError):
    """An input violates a documented precondition."""


class SolverError(FlavorError, RuntimeError):
    """A numerical method failed; the message carries the diagnostic."""


@dataclass(frozen=True)
class TimeGrid:
    t_start: float = 0.0
    t_end: float = 1.0
    dt: float = DEFAULT_DT

    def __post_init__(self):
        for name in ("t_start", "t_end", "dt"):
            if not np.isfinite(getattr(self, name)):
                raise ParameterError(f"{name} must be finite")
        if self.t_end <= self.t_start:
            raise ParameterError(
                f"t_end ({self.t_end}) must be larger than t_start ({self.t_start})"
            )
        if self.dt <= 0:
            raise ParameterError(f"dt must be positive, got {self.dt}")
        if self.dt > self.t_end - self.t_start:
            raise ParameterError(
                f"dt ({self.dt}) is larger than the interval {self.t_end - self.t_start}"
            )

    @classmethod
    def up_to(cls, horizon: float, dt: float = DEFAULT_DT) -> "TimeGrid":
        return cls(0.0, horizon, dt)

    @property
    def steps(self) -> int:
        # The small slack keeps t_end when the span is a multiple of dt up to rounding.
        return int(np.floor((self.t_end - self.t_start) / self.dt + 1e-9))

    def times(self) -> np.ndarray:
        return self.t_start + self.dt * np.arange(self.steps + 1)


@dataclass
class Trajectory:
    """
    Time series of the flavor diagnostic zeta, plus named audit channels
    (conserved quantities or secondary observables) sampled on the same times.
    """

    times: np.ndarray
    zeta: np.ndarray
    audits: Dict[str, np.ndarray] = field(default_factory=dict)
    label: str = ""

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.zeta = np.asarray(self.zeta, dtype=float)
        if self.times.ndim != 1 or len(self.times) == 0:
            raise ParameterError("a trajectory needs a non-empty one-dimensional time axis")
        if self.zeta.shape != self.times.shape:
            raise ParameterError(
                f"zeta has {len(self.zeta)} samples for {len(self.times)} times"
            )
        if np.any(np.diff(self.times) <= 0):
            raise ParameterError("trajectory times must be strictly increasing")
        excess = np.max(np.abs(self.zeta)) - 1.0
        if not np.isfinite(excess) or excess > ZETA_TOLERANCE:
            raise SolverError(
                f"zeta left [-1, 1] by {excess:.3g} in trajectory {self.label!r}; "
                "try a smaller step"
            )
        audits = {}
        for name, series in self.audits.items():
            series = np.asarray(series, dtype=float)
            if series.shape != self.times.shape:
                raise ParameterError(f"audit channel {name!r} does not match the time axis")
            audits[name] = series
        self.audits = audits

    def __len__(self) -> int:
        return len(self.times)

    def audit_drift(self, name: str, relative: bool = True) -> float:
        """Largest deviation of an audit channel from its initial value."""
        series = self.audits[name]
        drift = float(np.max(np.abs(series - series[0])))
        if relative and series[0] != 0:
            drift /= abs(series[0])
        return drift


@dataclass(frozen=True)
class ScalingFit:
    """
    T = slope * ln(N) + intercept, least squares.

    ``prefactor`` is the coefficient of the through-origin law T = c * ln(N)
    fitted to the same points.
    """

    slope: float
    intercept: float
    r_squared: float
    prefactor: float

    def __post_init__(self):
        if not 0.0 <= self.r_squared <= 1.0:
            raise ParameterError(f"r_squared {self.r_squared} outside [0, 1]")

    def predict(self, n: float) -> float:
        return self.slope * np.log(n) + self.intercept


Derivative = Callable[[float, np.ndarray], np.ndarray]


def integrate(
    deriv: Derivative,
    y0,
    grid: TimeGrid,
    observe: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Classical fixed-step fourth-order Runge-Kutta on ``grid``.

    ``deriv(t, y)`` returns dy/dt as an array shaped like ``y``; real and
    complex states are both fine. Returns ``(times, samples)`` where
    ``samples[k]`` is the state at ``times[k]``, or ``observe(state)`` when an
    observer is given (used to keep memory flat for large states).

    Raises SolverError naming the step at which the state stops being finite.
    """
    y = np.array(y0, dtype=np.result_type(np.asarray(y0), float), copy=True)
    times = grid.times()
    h = grid.dt
    record = observe if observe is not None else (lambda state: state.copy())

    first = np.asarray(record(y))
    samples = np.empty((len(times),) + first.shape, dtype=first.dtype)
    samples[0] = first

    logger.debug("integrating %d steps of %g, state shape %s", grid.steps, h, y.shape)
    for k in range(1, len(times)):
        t = times[k - 1]
        k1 = deriv(t, y)
        k2 = deriv(t + h / 2, y + (h / 2) * k1)
        k3 = deriv(t + h / 2, y + (h / 2) * k2)
        k4 = deriv(t + h, y + h * k3)
        y = y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(y)):
            raise SolverError(f"non-finite state at step {k} (t={times[k]:.6g})")
        samples[k] = record(y)
    return times, samples


def first_zero_crossing(traj: Trajectory) -> Optional[float]:
    """
    Time of the first sign change of zeta, linearly interpolated between the
    bracketing samples. A sample that is exactly zero is returned as is.
    None when zeta never changes sign.
    """
    zeta = traj.zeta
    signs = np.sign(zeta)
    zeros = np.flatnonzero(signs == 0)
    changes = np.flatnonzero(signs[:-1] * signs[1:] < 0)

    first_zero = zeros[0] if len(zeros) else None
    first_change = changes[0] if len(changes) else None
    if first_zero is None and first_change is None:
        return None
    if first_change is None or (first_zero is not None and first_zero <= first_change):
        return float(traj.times[first_zero])

    k = first_change
    t0, t1 = traj.times[k], traj.times[k + 1]
    z0, z1 = zeta[k], zeta[k + 1]
    return float(t0 + (t1 - t0) * z0 / (z0 - z1))


def fit_log_scaling(points: Iterable[Tuple[float, float]]) -> ScalingFit:
    """Least-squares fit of T against the natural logarithm of N."""
    points = list(points)
    if len(points) < 3:
        raise ParameterError(f"a log-scaling fit needs at least 3 points, got {len(points)}")
    ns = np.array([p[0] for p in points], dtype=float)
    ts = np.array([p[1] for p in points], dtype=float)
    if np.any(ns < 2):
        raise ParameterError("all N must be at least 2")
    if not np.all(np.isfinite(ts)):
        raise ParameterError("all break times must be finite")

    x = np.log(ns)
    try:
        result = linregress(x, ts)
    except ValueError as e:
        raise ParameterError(f"cannot fit the scaling law: {e}") from e
    r_squared = float(np.clip(result.rvalue**2, 0.0, 1.0)) if np.isfinite(result.rvalue) else 0.0
    prefactor = float(np.dot(x, ts) / np.dot(x, x))
    return ScalingFit(
        slope=float(result.slope),
        intercept=float(result.intercept),
        r_squared=r_squared,
        prefactor=prefactor,
    )


def late_time_mean(traj: Trajectory, fraction: float = 0.25) -> float:
    """Average of zeta over the last ``fraction`` of the run."""
    if not 0 < fraction <= 1:
        raise ParameterError("fraction must lie in (0, 1]")
    start = traj.times[-1] - fraction * (traj.times[-1] - traj.times[0])
    return float(np.mean(traj.zeta[traj.times >= start]))


def max_abs_slope(traj: Trajectory) -> float:
    if len(traj) < 2:
        return 0.0
    return float(np.max(np.abs(np.diff(traj.zeta) / np.diff(traj.times))))


def amplitude_after(traj: Trajectory, t: float) -> Optional[float]:
    """Largest |zeta| at or after time t; None if the run stops before t."""
    mask = traj.times >= t
    if not np.any(mask):
        return None
    return float(np.max(np.abs(traj.zeta[mask])))

