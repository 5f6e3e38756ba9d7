"""
Graviton Flavor Conversion

Mathics3 Module for the collective conversion of gravitons into photons \
in two clashing clouds of quanta. Evolutions are computed with the Python \
libraries:

<ul>
  <li><url>:numpy:
https://numpy.org/</url> for the mean-field and seeded classical equations
  <li><url>:scipy:
https://scipy.org/</url> for the exact quantum evolution on the pair-conversion ladder
  <li><url>:mpmath:
https://mpmath.org/</url> for extended-precision astrophysical estimates
</ul>

A command-line driver, 'flavor-conversion', writes the same runs as CSV \
and JSON files.

Examples:

   >> LoadModule["pymathics.flavor"]
    = pymathics.flavor

   >> FlavorBreakTime[SeededFlavorEvolution[0.001, 5]]
    = 3.45...

   >> "Classification" /. FlavorStability[0.5]
    = unstable

   >> ConversionFigureOfMerit[3.6*^56, 250] < 1
    = True
"""

from pymathics.flavor.astrophysics import ConversionFigureOfMerit, GravitonDensity
from pymathics.flavor.dynamics import (
    FlavorBreakTime,
    MeanFieldFlavorEvolution,
    QuantumFlavorEvolution,
    SeededFlavorEvolution,
)
from pymathics.flavor.instability import FlavorGrowthRate, FlavorStability
from pymathics.flavor.version import __version__

pymathics_version_data = {
    "author": "The Mathics3 Team",
    "version": __version__,
    "name": "Flavor",
    "requires": ["numpy", "scipy", "mpmath"],
}

__all__ = [
    "ConversionFigureOfMerit",
    "FlavorBreakTime",
    "FlavorGrowthRate",
    "FlavorStability",
    "GravitonDensity",
    "MeanFieldFlavorEvolution",
    "QuantumFlavorEvolution",
    "SeededFlavorEvolution",
    "__version__",
    "pymathics_version_data",
]
