# -*- coding: utf-8 -*-

"""
Order-of-magnitude feasibility of coherent graviton -> photon conversion
near a binary merger, in natural units (hbar = c = 1, energies in MeV).

Every number carries its power of MeV, so a chain of operations that
should be dimensionless can be checked to be so, and every intermediate is
kept in a provenance list that ends up in the JSON report.
"""

import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import List, Optional, Union

import mpmath
import numpy as np
import scipy.constants as constants

from pymathics.flavor.core import ParameterError

# Don't consider this for user documentation
no_doc = True

logger = logging.getLogger(__name__)

TURNOVER_CAPABLE = "turnover-capable"
BELOW_THRESHOLD = "below-threshold"
FILL_CONVENTIONS = {"diameter": 2.0, "radius": 1.0}

_MEV_JOULES = constants.mega * constants.electron_volt
_HBAR_MEV_SECONDS = constants.hbar / _MEV_JOULES


@dataclass(frozen=True)
class NaturalUnitContext:
    eight_pi_G: float = 1.5e-43  # MeV^-2
    hbar_seconds: float = _HBAR_MEV_SECONDS
    mev_per_erg: float = constants.erg / _MEV_JOULES
    mev_inverse_meters: float = 1.0 / (_HBAR_MEV_SECONDS * constants.c)  # 1 m in MeV^-1
    alpha: float = constants.fine_structure
    m_e: float = constants.physical_constants["electron mass energy equivalent in MeV"][0]
    c_meters_per_second: float = constants.c
    # Photon-photon refraction blocks conversion once it exceeds this
    # fraction of alpha^2 E^2 m_e^-4 n_gamma.
    refraction_margin: float = 0.1

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not value > 0:
                raise ParameterError(f"natural-unit constant {name} must be positive")


DEFAULT_CONTEXT = NaturalUnitContext()


@dataclass(frozen=True)
class Quantity:
    """A value in MeV^mev_power."""

    value: float
    mev_power: int = 0

    @property
    def unit(self) -> str:
        if self.mev_power == 0:
            return "1"
        if self.mev_power == 1:
            return "MeV"
        return f"MeV^{self.mev_power}"

    @property
    def dimensionless(self) -> bool:
        return self.mev_power == 0

    def __mul__(self, other):
        if isinstance(other, Quantity):
            return Quantity(self.value * other.value, self.mev_power + other.mev_power)
        return Quantity(self.value * other, self.mev_power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Quantity):
            return Quantity(self.value / other.value, self.mev_power - other.mev_power)
        return Quantity(self.value / other, self.mev_power)

    def __pow__(self, k: int):
        return Quantity(self.value**k, self.mev_power * k)


@dataclass(frozen=True)
class ProvenanceStep:
    name: str
    formula: str
    value: float
    unit: str


@dataclass
class Provenance:
    steps: List[ProvenanceStep] = field(default_factory=list)

    def record(self, name: str, formula: str, quantity: Quantity) -> Quantity:
        self.steps.append(ProvenanceStep(name, formula, float(quantity.value), quantity.unit))
        logger.debug("%s = %s = %.6g %s", name, formula, quantity.value, quantity.unit)
        return quantity

    def as_list(self) -> List[dict]:
        return [asdict(step) for step in self.steps]


@dataclass(frozen=True)
class MergerScenario:
    luminosity_erg_per_s: float
    frequency_hz: float

    def __post_init__(self):
        if not (self.luminosity_erg_per_s > 0 and self.frequency_hz > 0):
            raise ParameterError("luminosity and frequency must both be positive")

    @classmethod
    def from_json(cls, source: Union[str, Path, dict]) -> "MergerScenario":
        """Build from a mapping or a JSON file with luminosity_erg_per_s and frequency_hz."""
        data = source
        if not isinstance(source, dict):
            data = json.loads(Path(source).read_text())
        try:
            return cls(float(data["luminosity_erg_per_s"]), float(data["frequency_hz"]))
        except KeyError as e:
            raise ParameterError(f"merger scenario is missing {e}") from e


# Peak luminosity and frequency of the first observed binary black hole merger.
GW150914_SCENARIO = MergerScenario(luminosity_erg_per_s=3.6e56, frequency_hz=250.0)


def _as_quantity(x, mev_power: int) -> Quantity:
    if isinstance(x, Quantity):
        if x.mev_power != mev_power:
            raise ParameterError(f"expected MeV^{mev_power}, got {x.unit}")
        return x
    return Quantity(float(x), mev_power)


def wavelength(scenario: MergerScenario, ctx: NaturalUnitContext, trail: Provenance) -> Quantity:
    return trail.record(
        "wavelength",
        "c / f * (MeV^-1 per m)",
        Quantity(ctx.c_meters_per_second / scenario.frequency_hz * ctx.mev_inverse_meters, -1),
    )


def graviton_density(
    scenario: MergerScenario,
    ctx: NaturalUnitContext = DEFAULT_CONTEXT,
    fill: str = "diameter",
    trail: Optional[Provenance] = None,
) -> Quantity:
    """
    Gravitons in a sphere of radius one wavelength, filled at luminosity L
    for the light-crossing time of its diameter (or radius), in MeV^3.
    """
    if fill not in FILL_CONVENTIONS:
        raise ParameterError(f"fill must be one of {sorted(FILL_CONVENTIONS)}")
    trail = trail if trail is not None else Provenance()

    luminosity = trail.record(
        "luminosity",
        "L * (MeV per erg) * hbar",
        Quantity(scenario.luminosity_erg_per_s * ctx.mev_per_erg * ctx.hbar_seconds, 2),
    )
    lam1 = wavelength(scenario, ctx, trail)
    fill_time = trail.record(
        "fill_time", f"{FILL_CONVENTIONS[fill]:g} * wavelength", lam1 * FILL_CONVENTIONS[fill]
    )
    quantum = trail.record(
        "graviton_energy",
        "2 pi f hbar",
        Quantity(2 * np.pi * scenario.frequency_hz * ctx.hbar_seconds, 1),
    )
    energy = trail.record("sphere_energy", "luminosity * fill_time", luminosity * fill_time)
    count = trail.record("graviton_count", "sphere_energy / graviton_energy", energy / quantum)
    volume = trail.record("sphere_volume", "4/3 pi wavelength^3", (lam1**3) * (4 * np.pi / 3))
    return trail.record("graviton_density", "graviton_count / sphere_volume", count / volume)


def crossing_time(
    scenario: MergerScenario,
    ctx: NaturalUnitContext = DEFAULT_CONTEXT,
    trail: Optional[Provenance] = None,
) -> Quantity:
    """Light-crossing time of the one-wavelength sphere's diameter, MeV^-1."""
    trail = trail if trail is not None else Provenance()
    return trail.record("crossing_time", "2 * wavelength", wavelength(scenario, ctx, trail) * 2)


@dataclass(frozen=True)
class XiResult:
    xi: float
    verdict: str


def xi_figure_of_merit(
    n, t, ctx: NaturalUnitContext = DEFAULT_CONTEXT, trail: Optional[Provenance] = None
) -> XiResult:
    """xi = 8 pi G n T; n in MeV^3, T in MeV^-1. Turnover needs xi >= 1."""
    n = _as_quantity(n, 3)
    t = _as_quantity(t, -1)
    if n.value < 0 or t.value <= 0:
        raise ParameterError("xi needs n >= 0 and T > 0")
    trail = trail if trail is not None else Provenance()
    xi = trail.record("xi", "8 pi G * n * T", Quantity(ctx.eight_pi_G, -2) * n * t)
    if not xi.dimensionless:
        raise ParameterError(f"xi came out in {xi.unit}")
    verdict = TURNOVER_CAPABLE if xi.value >= 1 else BELOW_THRESHOLD
    return XiResult(float(xi.value), verdict)


@dataclass(frozen=True)
class BlockingResult:
    threshold: float
    parity_reachable: bool


def blocking_threshold(
    n_gr,
    photon_energy,
    ctx: NaturalUnitContext = DEFAULT_CONTEXT,
    trail: Optional[Provenance] = None,
) -> BlockingResult:
    """
    Photon density n_gamma* = 8 pi G n_gr m_e^4 / (margin alpha^2 E^2) above
    which photon-photon refraction blocks further conversion, in MeV^3.
    Parity is reachable when n_gamma* does not exceed n_gr.
    """
    n_gr = _as_quantity(n_gr, 3)
    energy = _as_quantity(photon_energy, 1)
    if n_gr.value <= 0 or energy.value <= 0:
        raise ParameterError("blocking threshold needs positive density and energy")
    trail = trail if trail is not None else Provenance()
    numerator = Quantity(ctx.eight_pi_G, -2) * n_gr * Quantity(ctx.m_e, 1) ** 4
    denominator = (energy**2) * (ctx.refraction_margin * ctx.alpha**2)
    threshold = trail.record(
        "blocking_threshold", "8 pi G n_gr m_e^4 / (margin alpha^2 E^2)", numerator / denominator
    )
    return BlockingResult(float(threshold.value), bool(threshold.value <= n_gr.value))


@dataclass(frozen=True)
class IncoherentComparison:
    log10_ratio: float
    log10_ratio_direct: float
    log10_cross_section_ratio: float

    @property
    def order_of_magnitude(self) -> int:
        return int(np.floor(self.log10_ratio))

    @property
    def paths_agree(self) -> bool:
        return abs(self.log10_ratio - self.log10_ratio_direct) < 0.1


def incoherent_comparison(
    frequency_hz: float,
    ctx: NaturalUnitContext = DEFAULT_CONTEXT,
    trail: Optional[Provenance] = None,
) -> IncoherentComparison:
    """
    How much slower incoherent graviton -> photon scattering is than the
    coherent rate, G^-1 lambda^2, computed as a sum of base-10 logarithms and
    independently as an mpmath product. Also reports G^-1 E^-2.
    """
    if not frequency_hz > 0:
        raise ParameterError("frequency must be positive")
    trail = trail if trail is not None else Provenance()

    log_inverse_g = np.log10(8 * np.pi) - np.log10(ctx.eight_pi_G)
    log_wavelength = (
        np.log10(ctx.c_meters_per_second) - np.log10(frequency_hz) + np.log10(ctx.mev_inverse_meters)
    )
    log_ratio = float(log_inverse_g + 2 * log_wavelength)

    with mpmath.workdps(50):
        inverse_g = 8 * mpmath.pi / mpmath.mpf(ctx.eight_pi_G)
        wave = mpmath.mpf(ctx.c_meters_per_second) / mpmath.mpf(frequency_hz)
        wave *= mpmath.mpf(ctx.mev_inverse_meters)
        direct = float(mpmath.log10(inverse_g * wave**2))
        quantum = 2 * mpmath.pi * mpmath.mpf(frequency_hz) * mpmath.mpf(ctx.hbar_seconds)
        cross_section = float(mpmath.log10(inverse_g / quantum**2))

    trail.record("log10_incoherent_ratio", "log10(G^-1 wavelength^2)", Quantity(log_ratio))
    trail.record("log10_cross_section_ratio", "log10(G^-1 E^-2)", Quantity(cross_section))
    if abs(log_ratio - direct) >= 0.1:
        logger.warning("log-sum %.4f and direct %.4f exponents disagree", log_ratio, direct)
    return IncoherentComparison(log_ratio, direct, cross_section)


def feasibility_report(
    scenario: MergerScenario = GW150914_SCENARIO,
    ctx: NaturalUnitContext = DEFAULT_CONTEXT,
    fill: str = "diameter",
    density: Optional[float] = None,
) -> dict:
    """
    The whole estimate as a JSON-ready record. ``density`` (MeV^3)
    replaces the computed graviton density in xi and the blocking check.
    """
    trail = Provenance()
    computed = graviton_density(scenario, ctx, fill, trail)
    n = Quantity(density, 3) if density is not None else computed
    t = crossing_time(scenario, ctx, trail)
    xi = xi_figure_of_merit(n, t, ctx, trail)
    photon_energy = Quantity(2 * np.pi * scenario.frequency_hz * ctx.hbar_seconds, 1)
    blocking = blocking_threshold(n, photon_energy, ctx, trail)
    incoherent = incoherent_comparison(scenario.frequency_hz, ctx, trail)

    verdict = (
        f"xi = {xi.xi:.3g} ({xi.verdict}); photons "
        f"{'can' if blocking.parity_reachable else 'cannot'} reach parity; "
        f"incoherent conversion slower by 10^{incoherent.log10_ratio:.1f}"
    )
    return {
        "scenario": asdict(scenario),
        "constants": asdict(ctx),
        "fill": fill,
        "graviton_density": {"value": computed.value, "unit": computed.unit},
        "density_used": {"value": n.value, "unit": n.unit},
        "crossing_time": {"value": t.value, "unit": t.unit},
        "xi": xi.xi,
        "xi_verdict": xi.verdict,
        "blocking_threshold": {"value": blocking.threshold, "unit": "MeV^3"},
        "parity_reachable": blocking.parity_reachable,
        "incoherent": asdict(incoherent),
        "provenance": trail.as_list(),
        "verdict": verdict,
    }
