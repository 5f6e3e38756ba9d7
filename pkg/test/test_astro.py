# -*- coding: utf-8 -*-
import json

import pytest

from pymathics.flavor.astro import (
    BELOW_THRESHOLD,
    DEFAULT_CONTEXT,
    GW150914_SCENARIO,
    TURNOVER_CAPABLE,
    MergerScenario,
    NaturalUnitContext,
    Provenance,
    Quantity,
    blocking_threshold,
    crossing_time,
    feasibility_report,
    graviton_density,
    incoherent_comparison,
    xi_figure_of_merit,
)
from pymathics.flavor.core import ParameterError


def test_quantity_units():
    energy = Quantity(2.0, 1)
    length = Quantity(3.0, -1)
    assert (energy * length).dimensionless
    assert (energy**3).unit == "MeV^3"
    assert (energy / length).mev_power == 2
    assert (2 * energy).value == 4.0
    assert energy.unit == "MeV"


def test_natural_unit_constants():
    ctx = DEFAULT_CONTEXT
    assert ctx.hbar_seconds == pytest.approx(6.582e-22, rel=1e-4)
    assert ctx.c_meters_per_second == 299792458.0
    assert ctx.mev_per_erg == pytest.approx(6.2415e5, rel=1e-4)
    assert ctx.mev_inverse_meters == pytest.approx(5.0677e12, rel=1e-4)
    # hbar c is 197.327 MeV fm.
    assert 1e15 / ctx.mev_inverse_meters == pytest.approx(197.327, rel=1e-5)
    assert 1 / ctx.alpha == pytest.approx(137.036, rel=1e-5)
    assert ctx.m_e == pytest.approx(0.511, rel=1e-3)


def test_graviton_density():
    trail = Provenance()
    density = graviton_density(GW150914_SCENARIO, trail=trail)
    assert density.unit == "MeV^3"
    assert density.value == pytest.approx(1.85e21, rel=0.02)
    assert [step["name"] for step in trail.as_list()][-1] == "graviton_density"

    radius = graviton_density(GW150914_SCENARIO, fill="radius")
    assert radius.value == pytest.approx(density.value / 2)
    with pytest.raises(ParameterError):
        graviton_density(GW150914_SCENARIO, fill="volume")


def test_crossing_time():
    t = crossing_time(GW150914_SCENARIO)
    assert t.unit == "MeV^-1"
    assert t.value == pytest.approx(1.2154e19, rel=1e-3)


def test_figure_of_merit():
    t = crossing_time(GW150914_SCENARIO)
    result = xi_figure_of_merit(1e22, t)
    assert result.xi == pytest.approx(0.0182, rel=5e-3)
    assert result.verdict == BELOW_THRESHOLD
    assert xi_figure_of_merit(1e25, t).verdict == TURNOVER_CAPABLE
    with pytest.raises(ParameterError):
        xi_figure_of_merit(Quantity(1e22, 2), t)
    with pytest.raises(ParameterError):
        xi_figure_of_merit(1e22, 0.0)


def test_blocking_threshold():
    energy = Quantity(2 * 3.141592653589793 * 250 * DEFAULT_CONTEXT.hbar_seconds, 1)
    result = blocking_threshold(1e22, energy)
    assert result.threshold == pytest.approx(1.80e19, rel=0.01)
    assert result.parity_reachable
    with pytest.raises(ParameterError):
        blocking_threshold(0.0, energy)


def test_incoherent_comparison():
    comparison = incoherent_comparison(250.0)
    assert comparison.log10_ratio == pytest.approx(81.8, abs=0.1)
    assert comparison.paths_agree
    assert comparison.order_of_magnitude == 81
    assert comparison.log10_cross_section_ratio == pytest.approx(80.2, abs=0.1)

    faster = incoherent_comparison(2500.0)
    assert comparison.log10_ratio - faster.log10_ratio == pytest.approx(2.0)
    with pytest.raises(ParameterError):
        incoherent_comparison(0.0)


def test_merger_scenario(tmp_path):
    path = tmp_path / "merger.json"
    path.write_text(json.dumps({"luminosity_erg_per_s": 1e55, "frequency_hz": 100}))
    assert MergerScenario.from_json(path) == MergerScenario(1e55, 100.0)
    assert MergerScenario.from_json({"luminosity_erg_per_s": 1, "frequency_hz": 2}).frequency_hz == 2.0
    with pytest.raises(ParameterError):
        MergerScenario.from_json({"frequency_hz": 2})
    with pytest.raises(ParameterError):
        MergerScenario(-1.0, 250.0)
    with pytest.raises(ParameterError):
        NaturalUnitContext(alpha=0.0)


def test_feasibility_report():
    report = feasibility_report()
    assert report["xi_verdict"] == BELOW_THRESHOLD
    assert report["xi"] == pytest.approx(0.0034, rel=0.05)
    assert report["density_used"] == report["graviton_density"]
    assert report["parity_reachable"]
    assert report["constants"]["eight_pi_G"] == DEFAULT_CONTEXT.eight_pi_G
    names = {step["name"] for step in report["provenance"]}
    assert {"wavelength", "graviton_density", "crossing_time", "xi"} <= names
    json.dumps(report)

    overridden = feasibility_report(density=1e22)
    assert overridden["density_used"]["value"] == 1e22
    assert overridden["xi"] == pytest.approx(0.0182, rel=5e-3)
