# -*- coding: utf-8 -*-
"""
Astrophysical Estimates

Order-of-magnitude numbers for coherent graviton to photon conversion \
near a binary merger, in natural units where energies are in MeV.
"""

from mathics.core.atoms import Real, String
from mathics.core.evaluation import Evaluation

from pymathics.flavor.astro import (
    FILL_CONVENTIONS,
    MergerScenario,
    feasibility_report,
    graviton_density,
)
from pymathics.flavor.base import _FlavorBuiltin
from pymathics.flavor.util import merge_dictionaries

sort_order = "Astrophysical Estimates"


class _MergerBuiltin(_FlavorBuiltin):
    options = {
        "Fill": '"diameter"',
    }

    messages = merge_dictionaries(
        _FlavorBuiltin.messages,
        {"fill": 'Fill must be "diameter" or "radius", not `1`.'},
    )

    def _scenario(self, luminosity, frequency, evaluation: Evaluation, options: dict):
        values = self._reals(evaluation, luminosity, frequency)
        fill = self.get_option(options, "Fill", evaluation)
        if not isinstance(fill, String) or fill.value not in FILL_CONVENTIONS:
            evaluation.message(self.get_name(), "fill", fill)
            return None
        if values is None:
            return None
        scenario = self._guarded(evaluation, MergerScenario, *values)
        if scenario is None:
            return None
        return scenario, fill.value


class GravitonDensity(_MergerBuiltin):
    """
    <url>:Natural units:
    https://en.wikipedia.org/wiki/Natural_units</url>

    <dl>
      <dt>'GravitonDensity'[$L$, $f$]
      <dd>gives the number density, in MeV^3, of gravitons radiated at \
          luminosity $L$ (erg/s) and frequency $f$ (Hz) into a sphere one \
          wavelength in radius during the light-crossing time of its diameter.
    </dl>

    >> GravitonDensity[3.6*^56, 250] / 10^21
     = 1.8...

    With 'Fill -> "radius"' the sphere fills for half as long:
    >> GravitonDensity[3.6*^56, 250, Fill -> "radius"] / GravitonDensity[3.6*^56, 250]
     = 0.5
    """

    summary_text = "estimate the graviton number density near a merger"

    def eval(self, luminosity, frequency, evaluation: Evaluation, options: dict):
        "GravitonDensity[luminosity_, frequency_, OptionsPattern[GravitonDensity]]"
        found = self._scenario(luminosity, frequency, evaluation, options)
        if found is None:
            return None
        scenario, fill = found
        density = self._guarded(evaluation, graviton_density, scenario, fill=fill)
        return None if density is None else Real(density.value)


class ConversionFigureOfMerit(_MergerBuiltin):
    """
    <url>:Gravitational wave:
    https://en.wikipedia.org/wiki/Gravitational_wave</url>

    <dl>
      <dt>'ConversionFigureOfMerit'[$L$, $f$]
      <dd>gives $xi = 8 pi G n T$ for a merger radiating luminosity $L$ \
          (erg/s) at frequency $f$ (Hz); flavor turnover needs $xi >= 1$.
      <dt>'ConversionFigureOfMerit'[$L$, $f$, $n$]
      <dd>uses the graviton density $n$ (MeV^3) instead of the estimate.
    </dl>

    >> ConversionFigureOfMerit[3.6*^56, 250, 10^22]
     = 0.018...
    """

    summary_text = "compute the feasibility figure of merit xi"

    def eval(self, luminosity, frequency, evaluation: Evaluation, options: dict):
        "ConversionFigureOfMerit[luminosity_, frequency_, OptionsPattern[ConversionFigureOfMerit]]"
        return self._xi(luminosity, frequency, None, evaluation, options)

    def eval_density(self, luminosity, frequency, density, evaluation: Evaluation, options: dict):
        "ConversionFigureOfMerit[luminosity_, frequency_, density_, OptionsPattern[ConversionFigureOfMerit]]"
        return self._xi(luminosity, frequency, density, evaluation, options)

    def _xi(self, luminosity, frequency, density, evaluation: Evaluation, options: dict):
        found = self._scenario(luminosity, frequency, evaluation, options)
        if found is None:
            return None
        scenario, fill = found
        py_density = None
        if density is not None:
            values = self._reals(evaluation, density)
            if values is None:
                return None
            py_density = values[0]
        report = self._guarded(
            evaluation, feasibility_report, scenario, fill=fill, density=py_density
        )
        if report is None:
            return None
        return Real(report["xi"])
