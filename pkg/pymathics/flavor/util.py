# -*- coding: utf-8 -*-

"""
utils
"""

from typing import Optional

from mathics.core.atoms import Integer, Real
from mathics.core.evaluation import Evaluation
from mathics.eval.nevaluator import eval_N

# Don't consider this for user documentation
no_doc = True


def merge_dictionaries(a, b):
    c = a.copy()
    c.update(b)
    return c


def to_float(expr) -> Optional[float]:
    """Machine float for a Mathics3 real or integer atom, None otherwise."""
    if isinstance(expr, (Integer, Real)):
        return float(expr.value)
    return None


def to_machine_float(expr, evaluation: Evaluation) -> Optional[float]:
    """Like to_float, but first applies N[] to symbolic numbers such as Pi/4."""
    value = to_float(expr)
    if value is None:
        value = to_float(eval_N(expr, evaluation))
    return value
