import importlib
import pathlib
import runpy

import pytest


DOCS = pathlib.Path(__file__).resolve().parents[1] / "docs" / "source"


def _sphinx_config():
    return runpy.run_path(str(DOCS / "conf.py"))


def test_cross_references_cover_the_stack():
    sphinx_config = _sphinx_config()
    assert "sphinx.ext.intersphinx" in sphinx_config["extensions"]
    assert set(sphinx_config["intersphinx_mapping"]) == {
        "python",
        "numpy",
        "scipy",
        "sympy",
        "pandas",
    }
    assert sphinx_config["modindex_common_prefix"] == ["ricci_hessian_lib."]


def test_api_page_lists_importable_modules():
    lines = (DOCS / "api.rst").read_text(encoding="utf-8").splitlines()
    modules = [
        line.strip()
        for line in lines
        if line.strip().startswith("ricci_hessian_lib")
    ]
    assert "ricci_hessian_lib.geometry" in modules
    for name in modules:
        importlib.import_module(name)


@pytest.mark.parametrize(
    "alias",
    [
        "ricci_hessian_lib._state_z.Real",
        "ricci_hessian_lib.geometry._resampling.Rectangle",
    ],
)
def test_type_aliases_resolve(alias):
    assert alias in _sphinx_config()["autodoc_type_aliases"].values()
    module, name = alias.rsplit(".", 1)
    assert hasattr(importlib.import_module(module), name)
