# -*- coding: utf-8 -*-
"""
Flavor Dynamics

Time evolution of the flavor diagnostic zeta, the probability of still \
finding a graviton minus the probability of finding a photon, for two \
clashing clouds of quanta. Time is measured in units of $(n g)^{-1}$.

See <url>:Collective flavor oscillations:
https://en.wikipedia.org/wiki/Neutrino_oscillation#Collective_oscillations</url>.
"""

from mathics.core.evaluation import Evaluation
from mathics.core.list import ListExpression

from pymathics.flavor.base import (
    _FlavorBuiltin,
    missing_or_real,
    trajectory_pairs,
)
from pymathics.flavor.core import DEFAULT_DT, TimeGrid, Trajectory, first_zero_crossing
from pymathics.flavor.meanfield import run_single_mode
from pymathics.flavor.quantum_pair import QUANTUM_DT, build_ladder, evolve_ladder
from pymathics.flavor.seeded_classical import BeamPair, run_seeded
from pymathics.flavor.util import merge_dictionaries, to_machine_float

sort_order = "Flavor Dynamics"


class SeededFlavorEvolution(_FlavorBuiltin):
    """
    <url>:Coherent state:
    https://en.wikipedia.org/wiki/Coherent_state</url>

    <dl>
      <dt>'SeededFlavorEvolution'[$eps$, $tmax$]
      <dd>evolves two equal graviton beams, each seeded with a photon \
          admixture angle $eps$, up to time $tmax$ and returns the \
          $\\{t, zeta\\}$ pairs.
    </dl>

    Without a seed nothing happens:
    >> Union[Last /@ SeededFlavorEvolution[0, 1, TimeStep -> 0.1]]
     = {1.}

    A seed of $10^{-3}$ turns over at $\\frac{1}{2}\\log(1/\\tan 10^{-3})$:
    >> FlavorBreakTime[SeededFlavorEvolution[0.001, 5]]
     = 3.45...
    """

    summary_text = "evolve seeded classical graviton beams"

    def eval(self, eps, tmax, evaluation: Evaluation, options: dict):
        "SeededFlavorEvolution[eps_, tmax_, OptionsPattern[SeededFlavorEvolution]]"
        args = self._reals(evaluation, eps, tmax)
        dt = self._time_step(evaluation, options, DEFAULT_DT)
        if args is None or dt is None:
            return None
        py_eps, py_tmax = args
        traj = self._guarded(
            evaluation,
            lambda: run_seeded(BeamPair.symmetric(py_eps), TimeGrid.up_to(py_tmax, dt)),
        )
        return None if traj is None else trajectory_pairs(traj)


class QuantumFlavorEvolution(_FlavorBuiltin):
    """
    <url>:Quantum break time:
    https://en.wikipedia.org/wiki/Spin_squeezing</url>

    <dl>
      <dt>'QuantumFlavorEvolution'[$n$, $tmax$]
      <dd>evolves $n$ gravitons against $n$ gravitons exactly, on the \
          $n+1$ collective pair-conversion states, and returns the \
          $\\{t, zeta\\}$ pairs.
      <dt>'QuantumFlavorEvolution'[$n$, $tmax$, $lambda$]
      <dd>adds the flavor-diagonal coupling $lambda$.
    </dl>

    A single pair performs Rabi oscillations, $zeta = \\cos 2t$:
    >> QuantumFlavorEvolution[1, 1, TimeStep -> 0.5]
     = {{0., 1.}, {0.5, 0.540302}, {1., -0.416147}}

    >> FlavorBreakTime[QuantumFlavorEvolution[64, 6]]
     = 2.98...
    """

    summary_text = "evolve the exact collective quantum state"

    def eval(self, n, tmax, evaluation: Evaluation, options: dict):
        "QuantumFlavorEvolution[n_Integer, tmax_, OptionsPattern[QuantumFlavorEvolution]]"
        return self._evolve(n, tmax, 0.0, evaluation, options)

    def eval_with_lambda(self, n, tmax, lam, evaluation: Evaluation, options: dict):
        "QuantumFlavorEvolution[n_Integer, tmax_, lam_, OptionsPattern[QuantumFlavorEvolution]]"
        py_lam = self._reals(evaluation, lam)
        if py_lam is None:
            return None
        return self._evolve(n, tmax, py_lam[0], evaluation, options)

    def _evolve(self, n, tmax, lam: float, evaluation: Evaluation, options: dict):
        py_tmax = self._reals(evaluation, tmax)
        dt = self._time_step(evaluation, options, QUANTUM_DT)
        if py_tmax is None or dt is None:
            return None
        traj = self._guarded(
            evaluation,
            lambda: evolve_ladder(build_ladder(n.value, lam), TimeGrid.up_to(py_tmax[0], dt)),
        )
        return None if traj is None else trajectory_pairs(traj)


class MeanFieldFlavorEvolution(_FlavorBuiltin):
    """
    <url>:Mean-field theory:
    https://en.wikipedia.org/wiki/Mean-field_theory</url>

    <dl>
      <dt>'MeanFieldFlavorEvolution'[$n$, $seed$, $tmax$]
      <dd>evolves the single-mode mean-field equations for clouds of $n$ \
          quanta whose photon seed is $seed$ (in units of the quantum \
          vacuum seed) and returns the $\\{t, zeta\\}$ pairs.
      <dt>'MeanFieldFlavorEvolution'[$n$, $seed$, $tmax$, $lambda$]
      <dd>adds the flavor-diagonal coupling $lambda$.
    </dl>

    >> FlavorBreakTime[MeanFieldFlavorEvolution[512, 1, 6]]
     = ...

    The seed must leave gravitons in the cloud:
    >> MeanFieldFlavorEvolution[1, 10, 1]
     : seed 10.0 asks for more photons than the mode holds
     = MeanFieldFlavorEvolution[1, 10, 1]
    """

    summary_text = "evolve the mean-field flavor equations"

    def eval(self, n, seed, tmax, evaluation: Evaluation, options: dict):
        "MeanFieldFlavorEvolution[n_, seed_, tmax_, OptionsPattern[MeanFieldFlavorEvolution]]"
        return self._evolve([n, seed, tmax], 0.0, evaluation, options)

    def eval_with_lambda(self, n, seed, tmax, lam, evaluation: Evaluation, options: dict):
        "MeanFieldFlavorEvolution[n_, seed_, tmax_, lam_, OptionsPattern[MeanFieldFlavorEvolution]]"
        py_lam = self._reals(evaluation, lam)
        if py_lam is None:
            return None
        return self._evolve([n, seed, tmax], py_lam[0], evaluation, options)

    def _evolve(self, exprs, lam: float, evaluation: Evaluation, options: dict):
        args = self._reals(evaluation, *exprs)
        dt = self._time_step(evaluation, options, DEFAULT_DT)
        if args is None or dt is None:
            return None
        py_n, py_seed, py_tmax = args
        traj = self._guarded(
            evaluation,
            lambda: run_single_mode(py_n, py_seed, lam, TimeGrid.up_to(py_tmax, dt)),
        )
        return None if traj is None else trajectory_pairs(traj)


class FlavorBreakTime(_FlavorBuiltin):
    """
    <url>:Zero crossing:
    https://en.wikipedia.org/wiki/Zero_crossing</url>

    <dl>
      <dt>'FlavorBreakTime'[$data$]
      <dd>gives the first time at which $zeta$ in a list of $\\{t, zeta\\}$ \
          pairs changes sign, interpolating linearly between samples.
    </dl>

    >> FlavorBreakTime[{{0, 1}, {1, 0.5}, {2, -0.5}}]
     = 1.5

    >> FlavorBreakTime[{{0, 1}, {1, 1}}]
     = Missing[NotAvailable]
    """

    messages = merge_dictionaries(
        _FlavorBuiltin.messages,
        {"pairs": "A non-empty list of {t, zeta} pairs was expected."},
    )

    options = {}

    summary_text = "find the first zero crossing of zeta"

    def eval(self, data, evaluation: Evaluation):
        "FlavorBreakTime[data_List]"
        times, zetas = [], []
        for pair in data.elements:
            if not isinstance(pair, ListExpression) or len(pair.elements) != 2:
                evaluation.message(self.get_name(), "pairs")
                return None
            t, z = (to_machine_float(e, evaluation) for e in pair.elements)
            if t is None or z is None:
                evaluation.message(self.get_name(), "pairs")
                return None
            times.append(t)
            zetas.append(z)
        if not times:
            evaluation.message(self.get_name(), "pairs")
            return None
        traj = self._guarded(evaluation, Trajectory, times, zetas)
        return None if traj is None else missing_or_real(first_zero_crossing(traj))
