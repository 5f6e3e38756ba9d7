# -*- coding: utf-8 -*-

"""
Seeded classical model: two clashing beams in coherent states whose
mixing angles grow under

    d theta_A / d tau = r_B sin(2 theta_B)
    d theta_B / d tau = r_A sin(2 theta_A)

with zeta = cos(2 theta) the graviton-minus-photon probability of a beam.
The rates r = n / sqrt(n_A n_B) are both 1 for equal occupations.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from pymathics.flavor.core import (
    ParameterError,
    TimeGrid,
    Trajectory,
    first_zero_crossing,
    integrate,
)

# Don't consider this for user documentation
no_doc = True

logger = logging.getLogger(__name__)

DEFAULT_SEEDED_HORIZON = 25.0


@dataclass(frozen=True)
class MixingAngles:
    theta_a: float
    theta_b: float

    def __post_init__(self):
        if not (np.isfinite(self.theta_a) and np.isfinite(self.theta_b)):
            raise ParameterError("mixing angles must be finite")

    def as_array(self) -> np.ndarray:
        return np.array([self.theta_a, self.theta_b])


@dataclass(frozen=True)
class BeamPair:
    """
    Occupations and initial photon admixture angles of two clashing beams.
    A seed epsilon corresponds to a photon fraction sin(epsilon)^2.
    """

    n_a: float = 1.0
    n_b: float = 1.0
    seed_a: float = 0.0
    seed_b: float = 0.0

    def __post_init__(self):
        if not (self.n_a > 0 and self.n_b > 0):
            raise ParameterError("beam occupations must be positive")
        if not (self.seed_a >= 0 and self.seed_b >= 0):
            raise ParameterError("seed angles must be non-negative")

    @classmethod
    def symmetric(cls, seed: float, n: float = 1.0) -> "BeamPair":
        return cls(n_a=n, n_b=n, seed_a=seed, seed_b=seed)

    @classmethod
    def from_photon_fraction(cls, fraction: float, n: float = 1.0) -> "BeamPair":
        """Symmetric beams whose initial photon fraction is ``fraction``."""
        if not 0 <= fraction <= 1:
            raise ParameterError(f"photon fraction {fraction} outside [0, 1]")
        return cls.symmetric(float(np.arcsin(np.sqrt(fraction))), n)

    @property
    def rates(self) -> Tuple[float, float]:
        scale = np.sqrt(self.n_a * self.n_b)
        return self.n_a / scale, self.n_b / scale

    def with_seeds(self, seed_a: float, seed_b: float) -> "BeamPair":
        return BeamPair(self.n_a, self.n_b, seed_a, seed_b)

    def initial_angles(self) -> MixingAngles:
        return MixingAngles(self.seed_a, self.seed_b)


def seeded_derivs(state: MixingAngles, beams: BeamPair) -> Tuple[float, float]:
    """(d theta_A/d tau, d theta_B/d tau) for the given angles."""
    r_a, r_b = beams.rates
    return (
        float(r_b * np.sin(2 * state.theta_b)),
        float(r_a * np.sin(2 * state.theta_a)),
    )


def run_seeded(beams: BeamPair, grid: TimeGrid) -> Trajectory:
    r_a, r_b = beams.rates

    def deriv(_t, y):
        return np.array([r_b * np.sin(2 * y[1]), r_a * np.sin(2 * y[0])])

    times, angles = integrate(deriv, beams.initial_angles().as_array(), grid)
    theta_a, theta_b = angles[:, 0], angles[:, 1]
    return Trajectory(
        times,
        np.cos(2 * theta_a),
        audits={
            "zeta_b": np.cos(2 * theta_b),
            "theta_a": theta_a,
            "theta_b": theta_b,
        },
        label=f"seeded eps_a={beams.seed_a:.6g} eps_b={beams.seed_b:.6g}",
    )


def symmetric_closed_form(seed: float, tau) -> np.ndarray:
    """theta(tau) = arctan(tan(seed) exp(2 tau)) for equal beams and seeds."""
    return np.arctan(np.tan(seed) * np.exp(2 * np.asarray(tau, dtype=float)))


def closed_form_crossing(seed: float) -> float:
    """First zeta = 0 time of the symmetric model: (1/2) ln(1/tan(seed))."""
    if not 0 < seed <= np.pi / 4:
        raise ParameterError(f"seed {seed} outside (0, pi/4]")
    return float(0.5 * np.log(1.0 / np.tan(seed)))


def break_time_vs_seed(
    template: BeamPair, seeds: Sequence[float], grid: Optional[TimeGrid] = None
) -> List[Tuple[float, Optional[float]]]:
    """
    First zero crossing of zeta for each seed, applied to both beams of
    ``template``. Seeds that never cross within the grid map to None.
    """
    if grid is None:
        grid = TimeGrid.up_to(DEFAULT_SEEDED_HORIZON)
    results = []
    for seed in seeds:
        if not 0 < seed <= np.pi / 4:
            raise ParameterError(f"seed {seed} outside (0, pi/4]")
        crossing = first_zero_crossing(run_seeded(template.with_seeds(seed, seed), grid))
        if crossing is None:
            logger.info("seed %g does not cross zero before %g", seed, grid.t_end)
        results.append((float(seed), crossing))
    return results
