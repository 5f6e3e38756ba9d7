# -*- coding: utf-8 -*-

"""
Linear stability of the all-graviton configuration against a small photon
admixture, with a flavor-diagonal coupling lambda.

Linearizing the pair equations around sigma3 = n, tau3 = -n gives the
2x2 matrix W = [[lambda, 1], [-1, -lambda]] whose eigenvalues solve
mu^2 = lambda^2 - 1: imaginary (exponential growth at rate
sqrt(1 - lambda^2)) for |lambda| < 1, real (bounded oscillation) for
|lambda| > 1.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.stats import linregress

from pymathics.flavor.core import ParameterError, TimeGrid
from pymathics.flavor.meanfield import run_single_mode

# Don't consider this for user documentation
no_doc = True

logger = logging.getLogger(__name__)

UNSTABLE = "unstable"
MARGINAL = "marginal"
STABLE = "stable"

# Amplification band, relative to the seed, treated as the linear regime.
GROWTH_WINDOW = (10.0, 1000.0)


@dataclass(frozen=True)
class StabilityReport:
    lam: float
    eigenvalues: Tuple[complex, complex]
    growth_rate: float
    classification: str

    def __post_init__(self):
        if self.growth_rate < 0:
            raise ParameterError("growth rate must be non-negative")
        if self.classification not in (UNSTABLE, MARGINAL, STABLE):
            raise ParameterError(f"unknown stability class {self.classification!r}")


def w_matrix(lam: float) -> np.ndarray:
    return np.array([[lam, 1.0], [-1.0, -lam]])


def analyze_lambda(lam: float) -> StabilityReport:
    if not np.isfinite(lam):
        raise ParameterError("lambda must be finite")
    lam = float(lam)
    discriminant = lam * lam - 1.0
    if discriminant >= 0:
        mu = complex(np.sqrt(discriminant))
    else:
        mu = complex(0.0, np.sqrt(-discriminant))

    magnitude = abs(lam)
    if magnitude < 1:
        classification = UNSTABLE
    elif magnitude == 1:
        classification = MARGINAL
    else:
        classification = STABLE
    growth_rate = float(np.sqrt(1.0 - lam * lam)) if magnitude <= 1 else 0.0
    return StabilityReport(
        lam=lam,
        eigenvalues=(mu, -mu),
        growth_rate=growth_rate,
        classification=classification,
    )


def turnover_predictions(lam: float, base_time: float) -> Tuple[Optional[float], Optional[float]]:
    """
    Turnover times scaled from the lambda = 0 crossing ``base_time``:
    (base / sqrt(1 - lambda^2), base / (1 - |lambda|)). Both are None
    outside the unstable band.
    """
    magnitude = abs(lam)
    if magnitude >= 1:
        return None, None
    return (
        float(base_time / np.sqrt(1.0 - magnitude**2)),
        float(base_time / (1.0 - magnitude)),
    )


@dataclass(frozen=True)
class GrowthMeasurement:
    lam: float
    rate: Optional[float]
    predicted: float
    max_amplification: float
    window: Optional[Tuple[float, float]]

    @property
    def growing(self) -> bool:
        return self.rate is not None


def growth_rate_empirical(
    lam: float,
    seed: complex = 1.0,
    horizon: float = 40.0,
    n: float = 1e12,
    dt: float = 1e-2,
) -> GrowthMeasurement:
    """
    Exponential growth rate of |sigma+| in a single-mode mean-field run,
    fitted over the stretch where the seed has been amplified between 10x
    and 1000x. ``seed`` is the initial sigma+ = tau+ amplitude.

    A run that never reaches the window is reported as non-growing
    (``rate`` None).
    """
    if seed == 0:
        raise ParameterError("a growth measurement needs a non-zero seed")
    if abs(seed) > 1e-6 * n:
        raise ParameterError(
            f"seed {abs(seed):.3g} is too large for the linear regime of n={n:.3g}"
        )
    traj = run_single_mode(n, seed, lam, TimeGrid.up_to(horizon, dt), seed_units="amplitude")
    amplitude = traj.audits["abs_sigma_plus"]
    gain = amplitude / amplitude[0]
    predicted = analyze_lambda(lam).growth_rate
    max_gain = float(np.max(gain))

    low, high = GROWTH_WINDOW
    start = np.flatnonzero(gain >= low)
    if len(start) == 0:
        logger.info("lambda=%g: amplification %.3g never reached %g", lam, max_gain, low)
        return GrowthMeasurement(lam, None, predicted, max_gain, None)
    start = start[0]
    beyond = np.flatnonzero(gain[start:] > high)
    stop = start + beyond[0] if len(beyond) else len(gain)
    if stop - start < 3:
        return GrowthMeasurement(lam, None, predicted, max_gain, None)

    times = traj.times[start:stop]
    fit = linregress(times, np.log(amplitude[start:stop]))
    return GrowthMeasurement(
        lam=float(lam),
        rate=float(fit.slope),
        predicted=predicted,
        max_amplification=max_gain,
        window=(float(times[0]), float(times[-1])),
    )
