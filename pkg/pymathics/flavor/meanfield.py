# -*- coding: utf-8 -*-

"""
Mean-field (Bloch vector) evolution of graviton/photon flavor for two
clouds A and B. Each momentum mode carries sigma+ and sigma3 (cloud A) or
tau+ and tau3 (cloud B). With kernel K[q, k] coupling mode q of A to mode
k of B and n the particle count of a cloud, in units of (n g)^-1:

    i d sigma+_q = (sigma3_q F_q + lambda sigma+_q G_q) / n
    i d tau+_k   = (tau3_k P_k + lambda tau+_k Q_k) / n
      d sigma3_q =  4 Im(sigma+_q conj(F_q)) / n
      d tau3_k   = -4 Im(conj(tau+_k) P_k) / n

where F = K tau+, G = K tau3, P = K^T sigma+, Q = K^T sigma3. Every
mode keeps s3^2 + 4 |s+|^2 fixed and sum(sigma3) + sum(tau3) is constant.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from pymathics.flavor.core import (
    ParameterError,
    TimeGrid,
    Trajectory,
    first_zero_crossing,
    integrate,
    late_time_mean,
    max_abs_slope,
)

# Don't consider this for user documentation
no_doc = True

logger = logging.getLogger(__name__)

# Median photon number of the seed the quantum vacuum supplies to a mode;
# a mean-field seed of modulus 1 carries this many photons.
VACUUM_SEED_PHOTONS = float(np.log(2.0) / 2.0)

GOLDEN_ANGLE = float(np.pi * (3.0 - np.sqrt(5.0)))
KERNELS = ("angular", "averaged")
SEED_UNITS = ("vacuum", "amplitude")
CLOUDS = ("A", "B")
DEFAULT_MEANFIELD_HORIZON = 32.0


@dataclass(frozen=True, eq=False)
class BlochMode:
    s_plus: complex
    s3: float
    direction: np.ndarray
    cloud: str = "A"

    def __post_init__(self):
        direction = np.asarray(self.direction, dtype=float)
        if direction.shape != (3,) or abs(np.linalg.norm(direction) - 1.0) > 1e-12:
            raise ParameterError(f"mode direction {direction} is not a unit 3-vector")
        if self.cloud not in CLOUDS:
            raise ParameterError(f"cloud must be one of {CLOUDS}, got {self.cloud!r}")
        if not (np.isfinite(self.s_plus) and np.isfinite(self.s3)):
            raise ParameterError("mode fields must be finite")
        object.__setattr__(self, "direction", direction)

    @property
    def spin_length(self) -> float:
        """s3^2 + 4 |s+|^2, the squared Bloch length; occupation squared."""
        return float(self.s3**2 + 4 * abs(self.s_plus) ** 2)


def _seeded_fields(occupation: float, photons: float, phase: float) -> Tuple[complex, float]:
    """(s+, s3) of a mode holding ``photons`` out of ``occupation`` quanta."""
    amplitude = np.sqrt((occupation - photons) * photons)
    return complex(amplitude * np.exp(1j * phase)), float(occupation - 2 * photons)


def seed_photons(seed: complex) -> float:
    return abs(seed) ** 2 * VACUUM_SEED_PHOTONS


@dataclass(frozen=True, eq=False)
class AngularEnsemble:
    """
    Modes of both clouds with their coupling kernel. ``occupation`` is the
    particle count of each cloud, shared equally among its modes.
    """

    modes: List[BlochMode]
    occupation: float
    kernel_strength: float = 1.0
    lam: float = 0.0
    kernel: str = "angular"

    def __post_init__(self):
        if self.kernel not in KERNELS:
            raise ParameterError(f"kernel must be one of {KERNELS}, got {self.kernel!r}")
        if self.occupation <= 0:
            raise ParameterError("cloud occupation must be positive")
        if self.kernel_strength <= 0:
            raise ParameterError("kernel strength must be positive")
        for cloud in CLOUDS:
            members = [m for m in self.modes if m.cloud == cloud]
            if not members:
                raise ParameterError(f"cloud {cloud} has no modes")
            total = sum(np.sqrt(m.spin_length) for m in members)
            if abs(total - self.occupation) > 1e-9 * self.occupation:
                raise ParameterError(
                    f"cloud {cloud} holds {total:.12g} quanta, expected {self.occupation:.12g}"
                )

    @classmethod
    def from_directions(
        cls,
        directions_a: np.ndarray,
        directions_b: np.ndarray,
        n: float,
        seed: complex = 1.0,
        lam: float = 0.0,
        kernel_strength: float = 1.0,
        kernel: str = "angular",
        seed_b: bool = True,
    ) -> "AngularEnsemble":
        """
        Spread ``n`` quanta evenly over the modes of each cloud. Every A mode
        (and every B mode when ``seed_b``) gets an equal share of the photon
        seed, so the collective sigma+ matches a single mode seeded with
        ``seed``.
        """
        directions_a = np.atleast_2d(directions_a)
        directions_b = np.atleast_2d(directions_b)
        photons = seed_photons(seed)
        if photons >= n:
            raise ParameterError(f"seed {seed} asks for more photons than the cloud holds")
        phase = float(np.angle(seed))

        modes = []
        for cloud, directions, seeded in (
            ("A", directions_a, True),
            ("B", directions_b, seed_b),
        ):
            m = len(directions)
            share = photons / m if seeded else 0.0
            s_plus, s3 = _seeded_fields(n / m, share, phase)
            sign = 1.0 if cloud == "A" else -1.0
            modes.extend(BlochMode(s_plus, sign * s3, d, cloud) for d in directions)
        return cls(modes, float(n), kernel_strength, float(lam), kernel)

    @classmethod
    def clashing_beams(cls, n: float, seed: complex = 1.0, **kwargs) -> "AngularEnsemble":
        """One mode per cloud, head on; the angular kernel then couples them with 2 g."""
        return cls.from_directions(
            np.array([[0.0, 0.0, 1.0]]), np.array([[0.0, 0.0, -1.0]]), n, seed, **kwargs
        )

    @classmethod
    def isotropic(
        cls,
        n: float,
        m: int,
        seed: complex = 1.0,
        rng_seed: Optional[int] = None,
        random: bool = False,
        **kwargs,
    ) -> "AngularEnsemble":
        """m modes per cloud, A isotropic and B its antipodal image."""
        directions = isotropic_sample(m, rng_seed, random)
        return cls.from_directions(directions, -directions, n, seed, **kwargs)

    def cloud_modes(self, cloud: str) -> List[BlochMode]:
        return [m for m in self.modes if m.cloud == cloud]

    def kernel_matrix(self) -> np.ndarray:
        """K[q, k] = g (1 - cos theta_qk) between A mode q and B mode k."""
        a = np.array([m.direction for m in self.cloud_modes("A")])
        b = np.array([m.direction for m in self.cloud_modes("B")])
        if self.kernel == "averaged":
            return np.full((len(a), len(b)), self.kernel_strength)
        return self.kernel_strength * (1.0 - a @ b.T)

    def state(self) -> np.ndarray:
        """[sigma+, tau+, sigma3, tau3] packed into one complex vector."""
        a, b = self.cloud_modes("A"), self.cloud_modes("B")
        return np.concatenate(
            [
                [m.s_plus for m in a],
                [m.s_plus for m in b],
                [m.s3 for m in a],
                [m.s3 for m in b],
            ]
        ).astype(complex)


def _pair_velocity(sp, tp, s3, t3, f, g, p, q, lam, rate):
    """Shared right-hand side; f, g, p, q are the kernel-weighted partner fields."""
    d_sp = -1j * rate * (s3 * f + lam * sp * g)
    d_tp = -1j * rate * (t3 * p + lam * tp * q)
    d_s3 = 4 * rate * np.imag(sp * np.conj(f))
    d_t3 = -4 * rate * np.imag(np.conj(tp) * p)
    return d_sp, d_tp, d_s3, d_t3


def single_mode_derivs(
    sigma: BlochMode, tau: BlochMode, lam: float = 0.0, rate: float = 1.0
) -> Tuple[complex, complex, float, float]:
    """
    (d sigma+, d tau+, d sigma3, d tau3) for one mode per cloud with unit
    kernel. ``rate`` multiplies every velocity; runs in (n g)^-1 time use
    rate 1/n.
    """
    d_sp, d_tp, d_s3, d_t3 = _pair_velocity(
        sigma.s_plus, tau.s_plus, sigma.s3, tau.s3,
        tau.s_plus, tau.s3, sigma.s_plus, sigma.s3,
        lam, rate,
    )
    return complex(d_sp), complex(d_tp), float(d_s3), float(d_t3)


def run_single_mode(
    n: float,
    seed: complex,
    lam: float = 0.0,
    grid: Optional[TimeGrid] = None,
    seed_units: str = "vacuum",
) -> Trajectory:
    """
    Single-mode mean-field run with zeta = sigma3 / n.

    With ``seed_units="vacuum"`` the seed is a photon amplitude in units of
    the vacuum seed and both clouds start with that many photons, keeping
    each spin length at n. With ``"amplitude"`` sigma+ = tau+ = seed on top
    of sigma3 = -tau3 = n, for linear-regime probes.
    """
    if n <= 0:
        raise ParameterError("occupation must be positive")
    if seed_units not in SEED_UNITS:
        raise ParameterError(f"seed_units must be one of {SEED_UNITS}")
    if grid is None:
        grid = TimeGrid.up_to(DEFAULT_MEANFIELD_HORIZON)

    if seed_units == "vacuum":
        photons = seed_photons(seed)
        if photons >= n:
            raise ParameterError(f"seed {seed} asks for more photons than the mode holds")
        s_plus, s3 = _seeded_fields(n, photons, float(np.angle(seed)))
    else:
        s_plus, s3 = complex(seed), float(n)
    y0 = np.array([s_plus, s_plus, s3, -s3], dtype=complex)
    rate = 1.0 / n

    def deriv(_t, y):
        sp, tp, s3_, t3_ = y
        return np.array(_pair_velocity(sp, tp, s3_, t3_, tp, t3_, sp, s3_, lam, rate))

    def observe(y):
        sp, tp, s3_, t3_ = y
        return np.array(
            [
                s3_.real / n,
                s3_.real**2 + 4 * abs(sp) ** 2,
                t3_.real**2 + 4 * abs(tp) ** 2,
                s3_.real + t3_.real,
                abs(sp),
            ]
        )

    times, obs = integrate(deriv, y0, grid, observe=observe)
    return Trajectory(
        times,
        obs[:, 0],
        audits={
            "spin_length_a": obs[:, 1],
            "spin_length_b": obs[:, 2],
            "total_s3": obs[:, 3],
            "abs_sigma_plus": obs[:, 4],
        },
        label=f"meanfield n={n:g} seed={seed} lambda={lam:g}",
    )


def isotropic_sample(m: int, rng_seed: Optional[int] = None, random: bool = False) -> np.ndarray:
    """
    m unit vectors covering the sphere, shaped (m, 3).

    The default is the Fibonacci lattice, z_i = 1 - (2i + 1)/m with
    azimuths advancing by the golden angle; ``rng_seed`` is only used by
    the ``random`` variant (normalized Gaussian vectors).
    """
    if int(m) != m or m < 1:
        raise ParameterError(f"need at least one direction, got m={m}")
    m = int(m)
    if random:
        vectors = np.random.default_rng(rng_seed).normal(size=(m, 3))
        return vectors / np.linalg.norm(vectors, axis=1, keepdims=True)
    if m == 1:
        return np.array([[0.0, 0.0, 1.0]])

    i = np.arange(m)
    z = 1.0 - (2 * i + 1) / m
    r = np.sqrt(1.0 - z * z)
    phi = i * GOLDEN_ANGLE
    directions = np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
    return directions / np.linalg.norm(directions, axis=1, keepdims=True)


def run_multimode(ensemble: AngularEnsemble, grid: Optional[TimeGrid] = None) -> Trajectory:
    """
    Cloud-averaged zeta_A = sum(sigma3) / n with audits for the largest
    relative per-mode spin-length drift and for sum(sigma3) + sum(tau3).
    """
    if grid is None:
        grid = TimeGrid.up_to(DEFAULT_MEANFIELD_HORIZON)
    kernel = ensemble.kernel_matrix()
    kernel_t = kernel.T.copy()
    m_a, m_b = kernel.shape
    n = ensemble.occupation
    lam = ensemble.lam
    rate = 1.0 / n
    y0 = ensemble.state()

    def split(y):
        return y[:m_a], y[m_a : m_a + m_b], y[m_a + m_b : 2 * m_a + m_b].real, y[2 * m_a + m_b :].real

    def deriv(_t, y):
        sp, tp, s3, t3 = split(y)
        f, g = kernel @ tp, kernel @ t3
        p, q = kernel_t @ sp, kernel_t @ s3
        return np.concatenate(_pair_velocity(sp, tp, s3, t3, f, g, p, q, lam, rate))

    def lengths(y):
        sp, tp, s3, t3 = split(y)
        return np.concatenate([s3**2 + 4 * np.abs(sp) ** 2, t3**2 + 4 * np.abs(tp) ** 2])

    initial = lengths(y0)

    def observe(y):
        sp, _tp, s3, t3 = split(y)
        drift = np.max(np.abs(lengths(y) - initial) / initial)
        return np.array([s3.sum() / n, s3.sum() + t3.sum(), drift, abs(sp.sum())])

    logger.debug("multimode run: %d x %d modes, %d steps", m_a, m_b, grid.steps)
    times, obs = integrate(deriv, y0, grid, observe=observe)
    return Trajectory(
        times,
        obs[:, 0],
        audits={
            "total_s3": obs[:, 1],
            "spin_length_drift": obs[:, 2],
            "abs_collective_sigma_plus": obs[:, 3],
        },
        label=f"multimode {m_a}x{m_b} {ensemble.kernel} lambda={lam:g}",
    )


@dataclass
class BeamIsotropicReport:
    beams: Trajectory
    isotropic: Trajectory
    beam_break_time: Optional[float]
    isotropic_break_time: Optional[float]
    isotropic_late_mean: float
    beam_max_slope: float
    isotropic_max_slope: float

    @property
    def ratio(self) -> Optional[float]:
        if not self.beam_break_time or self.isotropic_break_time is None:
            return None
        return self.isotropic_break_time / self.beam_break_time


def beam_vs_isotropic_report(
    n: float,
    m: int,
    seed: complex = 1.0,
    grid: Optional[TimeGrid] = None,
    **ensemble_options,
) -> BeamIsotropicReport:
    """
    Clashing beams against m-mode isotropic clouds holding the same number
    of quanta, with the break-time ratio and the isotropic late-time mean.
    """
    beams = run_multimode(AngularEnsemble.clashing_beams(n, seed, **ensemble_options), grid)
    isotropic = run_multimode(AngularEnsemble.isotropic(n, m, seed, **ensemble_options), grid)
    beams.label = f"beams n={n:g}"
    isotropic.label = f"isotropic n={n:g} m={m}"
    return BeamIsotropicReport(
        beams=beams,
        isotropic=isotropic,
        beam_break_time=first_zero_crossing(beams),
        isotropic_break_time=first_zero_crossing(isotropic),
        isotropic_late_mean=late_time_mean(isotropic),
        beam_max_slope=max_abs_slope(beams),
        isotropic_max_slope=max_abs_slope(isotropic),
    )

