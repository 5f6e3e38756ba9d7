# -*- coding: utf-8 -*-
import numpy as np
import pytest

from pymathics.flavor.core import (
    ParameterError,
    TimeGrid,
    Trajectory,
    first_zero_crossing,
    fit_log_scaling,
)
from pymathics.flavor.seeded_classical import (
    BeamPair,
    MixingAngles,
    break_time_vs_seed,
    closed_form_crossing,
    run_seeded,
    seeded_derivs,
    symmetric_closed_form,
)


def test_unseeded_beams_stay_gravitons():
    traj = run_seeded(BeamPair.symmetric(0.0), TimeGrid.up_to(10.0, 0.01))
    assert np.all(traj.zeta == 1.0)
    assert first_zero_crossing(traj) is None


def test_matches_closed_form():
    seed = 0.01
    traj = run_seeded(BeamPair.symmetric(seed), TimeGrid.up_to(3.0))
    expected = symmetric_closed_form(seed, traj.times)
    assert np.max(np.abs(traj.audits["theta_a"] - expected)) < 1e-8
    assert np.max(np.abs(traj.zeta - traj.audits["zeta_b"])) < 1e-12


def test_break_time_of_small_seed():
    traj = run_seeded(BeamPair.symmetric(1e-3), TimeGrid.up_to(5.0))
    assert closed_form_crossing(1e-3) == pytest.approx(3.4539, abs=1e-4)
    assert first_zero_crossing(traj) == pytest.approx(closed_form_crossing(1e-3), abs=1e-4)


def test_break_time_grows_logarithmically():
    fractions = [1e-4, 1e-6, 1e-8, 1e-10]
    template = BeamPair()
    seeds = [BeamPair.from_photon_fraction(f).seed_a for f in fractions]
    results = break_time_vs_seed(template, seeds)
    times = [t for _, t in results]
    assert all(t is not None for t in times)
    assert times == sorted(times)
    # tan(eps) ~ sqrt(f) gives T = ln(1/f) / 4.
    fit = fit_log_scaling(zip([1 / f for f in fractions], times))
    assert fit.slope == pytest.approx(0.25, abs=1e-3)
    assert fit.r_squared > 0.9999


def test_unequal_beams():
    beams = BeamPair(n_a=4.0, n_b=1.0, seed_a=1e-3, seed_b=1e-3)
    assert beams.rates == pytest.approx((2.0, 0.5))
    traj = run_seeded(beams, TimeGrid.up_to(10.0))
    assert first_zero_crossing(traj) is not None
    # The smaller beam is driven harder and converts first.
    beam_b = Trajectory(traj.times, traj.audits["zeta_b"])
    assert first_zero_crossing(beam_b) < first_zero_crossing(traj)


def test_swapping_seeds_swaps_beams():
    grid = TimeGrid.up_to(4.0, 0.01)
    forward = run_seeded(BeamPair(seed_a=1e-3, seed_b=1e-2), grid)
    backward = run_seeded(BeamPair(seed_a=1e-2, seed_b=1e-3), grid)
    assert np.max(np.abs(forward.zeta - backward.audits["zeta_b"])) < 1e-12


def test_swapping_occupations_and_seeds_swaps_beams():
    grid = TimeGrid.up_to(4.0, 0.01)
    forward = run_seeded(BeamPair(n_a=4.0, n_b=1.0, seed_a=1e-3, seed_b=1e-2), grid)
    backward = run_seeded(BeamPair(n_a=1.0, n_b=4.0, seed_a=1e-2, seed_b=1e-3), grid)
    assert np.max(np.abs(forward.zeta - backward.audits["zeta_b"])) < 1e-12
    assert np.max(np.abs(forward.audits["zeta_b"] - backward.zeta)) < 1e-12

    # Swapping only the occupations changes the dynamics.
    occupations_only = run_seeded(BeamPair(n_a=1.0, n_b=4.0, seed_a=1e-3, seed_b=1e-2), grid)
    assert np.max(np.abs(forward.zeta - occupations_only.zeta)) > 1e-3


def test_seeded_derivs():
    d_a, d_b = seeded_derivs(MixingAngles(np.pi / 4, 0.0), BeamPair())
    assert d_a == pytest.approx(0.0)
    assert d_b == pytest.approx(1.0)


def test_seeded_parameters():
    with pytest.raises(ParameterError):
        BeamPair(n_a=0.0)
    with pytest.raises(ParameterError):
        BeamPair(seed_a=-1e-3)
    with pytest.raises(ParameterError):
        BeamPair.from_photon_fraction(1.5)
    with pytest.raises(ParameterError):
        closed_form_crossing(1.0)
    with pytest.raises(ParameterError):
        break_time_vs_seed(BeamPair(), [0.0])
    with pytest.raises(ParameterError):
        MixingAngles(np.nan, 0.0)
