import time
from typing import Optional

from mathics.core.load_builtin import import_and_load_builtins
from mathics.session import MathicsSession

import_and_load_builtins()

# Set up a Mathics3 session with definitions.
# For consistency set the character encoding ASCII which is
# the lowest common denominator available on all systems.
session = MathicsSession(
    character_encoding="ASCII", add_builtin=True, catch_interrupt=False
)

MODULE = "pymathics.flavor"


def load_module():
    return session.evaluate(f'LoadModule["{MODULE}"]')


def reset_session(add_builtin=True, catch_interrupt=False):
    global session
    session.reset()
    load_module()


def evaluate_value(str_expr: str):
    return session.evaluate(str_expr).value


def evaluate(str_expr: str):
    return session.evaluate(str_expr)


def evaluate_float(str_expr: str) -> float:
    """Machine value of a numeric Mathics3 expression."""
    return float(evaluate_value(f"N[{str_expr}]"))


def check_evaluation(
    str_expr: str,
    str_expected: str,
    failure_message: str = "",
    hold_expected: bool = False,
    to_string_expr: bool = True,
    to_string_expected: bool = True,
    expected_messages: Optional[tuple] = None,
):
    """
    Evaluate ``str_expr`` and compare it with ``str_expected``.

    to_string_expr: If ``True`` (default value) both sides are compared as
                    the strings ToString gives. Otherwise the expressions are
                    compared. If ``str_expr`` is ``None``, the session is reset.

    hold_expected (bool): If ``True`` the ``str_expected`` is used literally
                          instead of being evaluated.

    expected_messages ``Optional[tuple[str]]``: messages the evaluation of
                    ``str_expr`` must print, in order. If ``None`` they are
                    not checked.
    """
    if str_expr is None:
        reset_session()
        return

    if to_string_expr:
        result = evaluate_value(f"ToString[{str_expr}]")
    else:
        result = evaluate(str_expr)

    outs = [out.text for out in session.evaluation.out]

    if hold_expected:
        expected = str_expected
    elif to_string_expected:
        expected = evaluate_value(f"ToString[{str_expected}]")
    else:
        expected = evaluate(str_expected)

    print(time.asctime())
    print((result, expected))
    assert result == expected, failure_message

    if expected_messages is not None:
        msgs = list(expected_messages)
        assert len(msgs) == len(outs), f"expected {len(msgs)}; got {len(outs)}. Messages: {outs}"
        for out, msg in zip(outs, msgs):
            assert out == msg, f"out:<<{out}>> and expected=<<{msg}>> do not match."
