# -*- coding: utf-8 -*-
"""
Flavor Instability

Linear stability of an all-graviton configuration against a small photon \
admixture when a flavor-diagonal coupling $lambda$ is present. Flavor \
turnover needs $|lambda| < 1$.
"""

from mathics.core.evaluation import Evaluation

from pymathics.flavor.base import _FlavorBuiltin, missing_or_real, rules
from pymathics.flavor.stability import analyze_lambda, growth_rate_empirical

sort_order = "Flavor Instability"


class FlavorStability(_FlavorBuiltin):
    """
    <url>:Linear stability:
    https://en.wikipedia.org/wiki/Linear_stability</url>

    <dl>
      <dt>'FlavorStability'[$lambda$]
      <dd>gives the stability class, the eigenvalues $\\pm\\sqrt{lambda^2-1}$ \
          of the linearized equations and the exponential growth rate.
    </dl>

    >> "GrowthRate" /. FlavorStability[0]
     = 1.

    >> "Classification" /. FlavorStability[1]
     = marginal

    >> "Classification" /. FlavorStability[-2]
     = stable
    """

    options = {}

    summary_text = "classify the linear stability of the flavor equations"

    def eval(self, lam, evaluation: Evaluation):
        "FlavorStability[lam_]"
        py_lam = self._reals(evaluation, lam)
        if py_lam is None:
            return None
        report = self._guarded(evaluation, analyze_lambda, py_lam[0])
        if report is None:
            return None
        return rules(
            {
                "Classification": report.classification,
                "Eigenvalues": list(report.eigenvalues),
                "GrowthRate": report.growth_rate,
            }
        )


class FlavorGrowthRate(_FlavorBuiltin):
    """
    <url>:Exponential growth:
    https://en.wikipedia.org/wiki/Exponential_growth</url>

    <dl>
      <dt>'FlavorGrowthRate'[$lambda$]
      <dd>measures the growth rate of a tiny photon seed in a mean-field \
          run, fitting its logarithm while the seed grows from 10 to 1000 \
          times its initial size.
    </dl>

    >> Abs[FlavorGrowthRate[0.8] - 0.6] < 0.02
     = True

    A stable configuration gives no rate:
    >> FlavorGrowthRate[1.5]
     = Missing[NotAvailable]
    """

    options = {}

    summary_text = "measure the linear growth rate of a photon seed"

    def eval(self, lam, evaluation: Evaluation):
        "FlavorGrowthRate[lam_]"
        py_lam = self._reals(evaluation, lam)
        if py_lam is None:
            return None
        measured = self._guarded(evaluation, growth_rate_empirical, py_lam[0])
        if measured is None:
            return None
        return missing_or_real(measured.rate)
