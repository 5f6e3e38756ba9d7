# -*- coding: utf-8 -*-

"""
Shared machinery for the flavor-conversion builtins
"""

from typing import Callable, Dict, Optional

import numpy as np
from mathics.core.atoms import Integer, Real, String
from mathics.core.builtin import Builtin
from mathics.core.convert.expression import Expression, to_expression
from mathics.core.convert.python import from_python
from mathics.core.evaluation import Evaluation
from mathics.core.list import ListExpression
from mathics.core.systemsymbols import SymbolMissing, SymbolRule

from pymathics.flavor.core import ParameterError, SolverError, Trajectory
from pymathics.flavor.util import to_machine_float

no_doc = True

StringNotAvailable = String("NotAvailable")


def missing_or_real(value: Optional[float]):
    if value is None:
        return Expression(SymbolMissing, StringNotAvailable)
    return Real(float(value))


def trajectory_pairs(traj: Trajectory) -> ListExpression:
    """{{t1, zeta1}, {t2, zeta2}, ...}"""
    return ListExpression(
        *(ListExpression(Real(float(t)), Real(float(z))) for t, z in zip(traj.times, traj.zeta))
    )


def rules(items: Dict[str, object]) -> ListExpression:
    elements = []
    for key, value in items.items():
        if value is None:
            value = Expression(SymbolMissing, StringNotAvailable)
        elif isinstance(value, (float, np.floating)):
            value = Real(float(value))
        elif isinstance(value, (list, tuple)):
            value = ListExpression(*(from_python(v) for v in value))
        else:
            value = from_python(value)
        elements.append(to_expression(SymbolRule, String(key), value))
    return ListExpression(*elements)


class _FlavorBuiltin(Builtin):
    requires = ("numpy", "scipy")

    messages = {
        "param": "`1`",
        "solver": "The numerical solver failed: `1`",
        "num": "A real number was expected at position `1` instead of `2`.",
        "step": "TimeStep must be a positive real number, not `1`.",
    }

    options = {
        "TimeStep": "Automatic",
    }

    def _time_step(self, evaluation: Evaluation, options: dict, default: float) -> Optional[float]:
        step = self.get_option(options, "TimeStep", evaluation)
        if step is None or step.get_name() == "System`Automatic":
            return default
        value = to_machine_float(step, evaluation)
        if value is None or value <= 0:
            evaluation.message(self.get_name(), "step", step)
            return None
        return value

    def _reals(self, evaluation: Evaluation, *exprs):
        """Machine floats for the arguments, or None after issuing ::num."""
        values = []
        for position, expr in enumerate(exprs, 1):
            value = to_machine_float(expr, evaluation)
            if value is None:
                evaluation.message(self.get_name(), "num", Integer(position), expr)
                return None
            values.append(value)
        return values

    def _guarded(self, evaluation: Evaluation, compute: Callable, *args, **kwargs):
        """Run a backend call, turning its failures into messages."""
        try:
            return compute(*args, **kwargs)
        except ParameterError as e:
            evaluation.message(self.get_name(), "param", String(str(e)))
        except SolverError as e:
            evaluation.message(self.get_name(), "solver", String(str(e)))
        return None
