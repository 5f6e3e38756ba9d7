# -*- coding: utf-8 -*-
"""
Invariants checked over randomly drawn configurations.
"""
import numpy as np
import pytest

from pymathics.flavor.core import TimeGrid, first_zero_crossing
from pymathics.flavor.meanfield import AngularEnsemble, run_multimode, run_single_mode
from pymathics.flavor.quantum_pair import build_ladder, evolve_ladder
from pymathics.flavor.seeded_classical import BeamPair, closed_form_crossing, run_seeded
from pymathics.flavor.stability import MARGINAL, STABLE, UNSTABLE, analyze_lambda

rng = np.random.default_rng(20240611)

LADDERS = [(int(n), float(lam)) for n, lam in zip(rng.integers(2, 80, 6), rng.uniform(-2, 2, 6))]
SEEDS = [float(s) for s in 10 ** rng.uniform(-8, -1, 6)]
LAMBDAS = [float(x) for x in rng.uniform(-3, 3, 20)]
ENSEMBLES = [
    (float(n), int(m), float(lam), float(kappa))
    for n, m, lam, kappa in zip(
        rng.uniform(50, 1000, 4), rng.integers(2, 12, 4), rng.uniform(-1, 1, 4), rng.uniform(0.5, 2, 4)
    )
]


@pytest.mark.parametrize(("n", "lam"), LADDERS)
def test_ladder_evolution_is_unitary(n, lam):
    traj = evolve_ladder(build_ladder(n, lam), TimeGrid.up_to(6.0, 0.02))
    assert traj.audit_drift("norm") < 1e-10
    assert traj.audit_drift("energy", relative=False) < 1e-8 * max(1.0, abs(lam) * n)
    assert np.max(np.abs(traj.zeta)) <= 1.0 + 1e-9


@pytest.mark.parametrize("seed", SEEDS)
def test_seeded_crossing_matches_closed_form(seed):
    traj = run_seeded(BeamPair.symmetric(seed), TimeGrid.up_to(12.0, 2e-3))
    assert first_zero_crossing(traj) == pytest.approx(closed_form_crossing(seed), abs=1e-4)


@pytest.mark.parametrize("lam", LAMBDAS)
def test_stability_classes_partition_the_line(lam):
    report = analyze_lambda(lam)
    expected = UNSTABLE if abs(lam) < 1 else (MARGINAL if abs(lam) == 1 else STABLE)
    assert report.classification == expected
    assert report.growth_rate >= 0
    assert (report.growth_rate > 0) == (expected == UNSTABLE)
    assert report.eigenvalues[0] == -report.eigenvalues[1]


@pytest.mark.parametrize(("n", "m", "lam", "kappa"), ENSEMBLES)
def test_multimode_conservation(n, m, lam, kappa):
    ensemble = AngularEnsemble.isotropic(n, m, lam=lam, kernel_strength=kappa)
    traj = run_multimode(ensemble, TimeGrid.up_to(4.0, 0.01))
    assert traj.audit_drift("spin_length_drift", relative=False) < 1e-6
    assert np.max(np.abs(traj.audits["total_s3"])) < 1e-8 * n


@pytest.mark.parametrize("seed", [0.5, 1.0, 2.0])
def test_single_mode_stays_on_the_sphere(seed):
    n = float(rng.uniform(100, 1000))
    traj = run_single_mode(n, seed, lam=float(rng.uniform(-1, 1)), grid=TimeGrid.up_to(6.0, 0.01))
    assert traj.audit_drift("spin_length_a") < 1e-8
    assert np.max(np.abs(traj.zeta)) <= 1.0 + 1e-9
