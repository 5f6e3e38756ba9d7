import glob
import importlib
import os
import os.path as osp
from types import ModuleType
from typing import Dict

import pytest
from mathics.core.builtin import Builtin
from mathics.core.load_builtin import name_is_builtin_symbol
from mathics.doc.gather import skip_doc

from pymathics.flavor import __file__ as module_initfile_path

module_path = osp.dirname(module_initfile_path)

CHECK_GRAMMAR = False

local_vocabulary = (
    "Mathics",
    "graviton",
    "gravitons",
    "Rabi",
    "zeta",
    "xi",
    "eigenvalues",
    "mean-field",
    "flavor-diagonal",
)

language_tool = None
if CHECK_GRAMMAR:
    try:
        import language_tool_python  # type: ignore[import-not-found]

        language_tool = language_tool_python.LanguageToolPublicAPI("en-US")
    except Exception:
        pass

module_names = [
    osp.basename(f[0:-3]) for f in glob.glob(osp.join(module_path, "[a-z]*.py"))
]

modules: Dict[str, ModuleType] = dict()
for module_name in module_names:
    try:
        modules[module_name] = importlib.import_module("pymathics.flavor." + module_name)
    except Exception as e:
        print(e)


def check_grammar(text: str):
    assert language_tool is not None
    matches = language_tool.check(text)
    filtered_matches = []
    for m in matches or ():
        if m.message == "Possible spelling mistake found.":
            word = m.sentence[m.offset : m.offset + m.errorLength]
            if word in local_vocabulary:
                continue
            print(f"<<{word}>> misspelled? not in {local_vocabulary}")
        filtered_matches.append(m)
    for msg in filtered_matches:
        print("\t", msg)
    return not filtered_matches


def check_well_formatted_docstring(docstr: str, instance: Builtin, module_name: str):
    name = instance.get_name()
    assert docstr.count("<dl>") >= 1, f"missing <dl> </dl> tags in {name} from {module_name}"
    assert docstr.count("</dl>") == docstr.count(
        "<dl>"
    ), f"unbalanced <dl> </dl> tags in {name} from {module_name}"
    assert docstr.count("<dt>") > 0, f"missing <dt> field {name} from {module_name}"
    assert docstr.count("<dd>") > 0, f"missing <dd> field {name} from {module_name}"
    assert docstr.count("</dt>") == 0, f"unnecessary </dt> {name} from {module_name}"
    assert docstr.count("</dd>") == 0, f"unnecessary </dd> field {name} from {module_name}"
    assert docstr.count("<url>") > 0, f"missing <url> field {name} from {module_name}"
    assert docstr.count("<url>") == docstr.lower().count(
        "</url>"
    ), f"unbalanced <url> </url> tags in {name} from {module_name}"
    assert ">>" in docstr, f"no examples in {name} from {module_name}"


@pytest.mark.skipif(
    not os.environ.get("MATHICS_LINT"),
    reason="Checking done only when MATHICS_LINT=t specified",
)
@pytest.mark.parametrize(
    ("module_name",),
    [(module_name,) for module_name in modules],
)
def test_summary_text_available(module_name):
    """
    Checks that each Builtin has its summary_text property and that every
    documented module names its section.
    """
    grammar_OK = True
    module = modules[module_name]
    if getattr(module, "no_doc", False) is True or module_name == "version":
        return
    assert hasattr(module, "sort_order"), f"{module_name} has no sort_order"
    for name in dir(module):
        var = name_is_builtin_symbol(module, name)
        if var is None:
            continue
        instance = var(expression=False)
        if not isinstance(instance, Builtin) or skip_doc(instance.__class__):
            continue

        assert hasattr(instance, "summary_text"), (
            f"{var.__name__} in {module_name} does not have a summary_text property"
        )
        docstring = instance.__doc__
        assert docstring is not None, f"empty docstring in {instance.get_name()} from {module_name}"
        check_well_formatted_docstring(docstring, instance, module_name)

        if language_tool and CHECK_GRAMMAR:
            full_summary_text = instance.summary_text.strip()
            full_summary_text = full_summary_text[0].upper() + full_summary_text[1:] + "."
            if not check_grammar(full_summary_text):
                grammar_OK = False
    assert grammar_OK
