# -*- coding: utf-8 -*-
import numpy as np
import pytest

from pymathics.flavor.core import ParameterError, TimeGrid, first_zero_crossing
from pymathics.flavor.quantum_pair import (
    LadderHamiltonian,
    LadderPropagator,
    LadderState,
    break_time_scan,
    build_ladder,
    evolve_ladder,
    lambda_turnover_probe,
    quantum_break_time,
)
from pymathics.flavor.stability import MARGINAL, STABLE, UNSTABLE


def test_single_pair_rabi_oscillation():
    grid = TimeGrid.up_to(5.0, 0.01)
    traj = evolve_ladder(build_ladder(1), grid)
    assert np.max(np.abs(traj.zeta - np.cos(2 * traj.times))) < 1e-12
    assert quantum_break_time(1, 0.0, grid) == pytest.approx(np.pi / 4, abs=1e-10)


def test_ladder_structure():
    h = build_ladder(4, lam=0.5)
    assert list(h.offdiag) == [4.0, 6.0, 6.0, 4.0]
    assert list(h.levels) == [4.0, 2.0, 0.0, -2.0, -4.0]
    assert list(h.cloud_b_levels) == [-4.0, -2.0, 0.0, 2.0, 4.0]
    assert h.diag == pytest.approx(-0.25 * h.levels**2)
    psi = np.arange(5, dtype=complex)
    assert h.apply(psi) == pytest.approx(h.dense() @ psi)


def test_conserved_audits():
    traj = evolve_ladder(build_ladder(64), TimeGrid.up_to(10.0, 0.01))
    assert traj.audit_drift("norm") < 1e-10
    assert traj.audit_drift("energy", relative=False) < 1e-9
    assert np.max(np.abs(traj.audits["sigma3_plus_tau3"])) < 1e-9
    assert np.max(np.abs(traj.zeta)) <= 1.0 + 1e-9


def test_flavor_audit_tracks_cloud_b(monkeypatch):
    grid = TimeGrid.up_to(3.0, 0.01)
    traj = evolve_ladder(build_ladder(8, lam=0.5), grid)
    assert np.max(np.abs(traj.audits["sigma3_plus_tau3"])) < 1e-9

    # With cloud A's sign convention for B the channel reads 2 sigma3.
    monkeypatch.setattr(LadderHamiltonian, "cloud_b_levels", property(lambda h: h.levels))
    broken = evolve_ladder(build_ladder(8, lam=0.5), grid)
    assert broken.audits["sigma3_plus_tau3"][0] == pytest.approx(16.0)
    assert np.allclose(broken.audits["sigma3_plus_tau3"], 2 * 8 * broken.zeta)


@pytest.mark.parametrize("lam", (0.0, 0.5, 1.0))
@pytest.mark.parametrize("n", range(1, 7))
def test_spectral_matches_dense_for_small_ladders(n, lam):
    h = build_ladder(n, lam)
    grid = TimeGrid.up_to(5.0, 0.01)
    spectral = evolve_ladder(h, grid)
    dense = evolve_ladder(h, grid, method="dense")
    assert np.max(np.abs(spectral.zeta - dense.zeta)) < 1e-10
    assert np.max(np.abs(spectral.audits["energy"] - dense.audits["energy"])) < 1e-10


def test_evolution_methods_agree():
    h = build_ladder(16, lam=0.3)
    grid = TimeGrid.up_to(5.0, 0.005)
    spectral = evolve_ladder(h, grid)
    dense = evolve_ladder(h, grid, method="dense")
    stepping = evolve_ladder(h, grid, method="stepping")
    assert np.max(np.abs(spectral.zeta - dense.zeta)) < 1e-8
    assert np.max(np.abs(spectral.zeta - stepping.zeta)) < 1e-4
    with pytest.raises(ParameterError):
        evolve_ladder(h, grid, method="lanczos")


def test_refined_crossing_is_a_root():
    propagator = LadderPropagator(build_ladder(32))
    traj = propagator.trajectory(TimeGrid.up_to(8.0, 0.05))
    refined = propagator.refined_crossing(traj)
    assert refined == pytest.approx(first_zero_crossing(traj), abs=1e-2)
    assert abs(propagator.zeta_at(refined)) < 1e-10


def test_break_time_scales_with_log_n():
    scan = break_time_scan([16, 64, 256, 1024], grid=TimeGrid.up_to(12.0, 0.01))
    times = [t for _, t in scan.times]
    assert scan.excluded == []
    assert times == sorted(times)
    assert scan.fit is not None
    assert scan.fit.prefactor == pytest.approx(0.65, abs=0.10)
    assert 0.45 <= scan.fit.slope <= 0.6
    assert scan.fit.r_squared > 0.98


def test_break_time_scan_without_crossings():
    scan = break_time_scan([16, 64, 256], grid=TimeGrid.up_to(0.5, 0.01))
    assert scan.excluded == [16, 64, 256]
    assert scan.fit is None


def test_break_time_scan_workers_agree():
    grid = TimeGrid.up_to(8.0, 0.01)
    serial = break_time_scan([8, 16, 32], grid=grid)
    parallel = break_time_scan([8, 16, 32], grid=grid, n_jobs=2)
    assert serial.times == parallel.times


def test_lambda_turnover_probe():
    probes = {p.lam: p for p in lambda_turnover_probe(256, [0.0, 0.5, 0.99, 1.0, 1.5])}
    assert probes[0.0].classification == UNSTABLE
    assert probes[1.0].classification == MARGINAL
    assert probes[1.5].classification == STABLE

    assert not probes[1.5].turns_over
    assert probes[1.5].min_zeta > 0.9
    assert probes[1.5].linear_prediction is None

    for lam in (0.0, 0.5, 0.99, 1.0):
        assert probes[lam].turns_over
    assert probes[0.5].turnover > probes[0.0].turnover
    assert probes[0.99].turnover > probes[0.5].turnover
    assert probes[1.0].turnover > 3 * probes[0.0].turnover
    assert probes[0.5].linear_prediction == pytest.approx(probes[0.0].turnover / np.sqrt(0.75))


def test_quantum_parameters():
    with pytest.raises(ParameterError):
        build_ladder(0)
    with pytest.raises(ParameterError):
        build_ladder(2.5)
    with pytest.raises(ParameterError):
        LadderState(np.array([1.0, 1.0], dtype=complex))
    with pytest.raises(ParameterError):
        break_time_scan([1, 16, 64])
    assert LadderState.all_gravitons(8).zeta() == 1.0
