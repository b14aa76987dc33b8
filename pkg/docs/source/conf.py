import os
import sys

sys.path.insert(0, os.path.abspath(".."))

# Configuration file for the Sphinx documentation builder.
#
# For the full list of built-in configuration values, see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Project information -----------------------------------------------------

project = "RicciHessianLib"  # pylint: disable=invalid-name
copyright = "MIT License"  # pylint: disable=invalid-name, redefined-builtin
author = "Pablo Ariño"  # pylint: disable=invalid-name

# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.viewcode",
    "sphinx.ext.autosummary",
    "sphinx.ext.doctest",
    "sphinx.ext.mathjax",
    "sphinx.ext.intersphinx",
    "myst_parser",
    "sphinx.ext.autodoc.typehints",
]

templates_path = ["_templates"]
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store", "_*.py"]
add_module_names = False  # pylint: disable=invalid-name
python_use_unqualified_type_names = True  # pylint: disable=invalid-name
autosummary_generate = True  # pylint: disable=invalid-name
autosummary_generate_overwrite = True  # pylint: disable=invalid-name

autodoc_default_options = {
    "members": True,
    "member-order": "bysource",
    "undoc-members": True,
    "show-inheritance": True,
    "imported-members": False,
    "special-members": "__call__",
    "exclude-members": "__weakref__, __dict__, __module__",
}
add_function_parentheses = True  # pylint: disable=invalid-name
modindex_common_prefix = ["ricci_hessian_lib."]
smartquotes = False  # pylint: disable=invalid-name

autodoc_typehints = "description"
autodoc_typehints_format = "short"
autodoc_type_aliases = {
    "Real": "ricci_hessian_lib._state_z.Real",
    "Rectangle": "ricci_hessian_lib.geometry._resampling.Rectangle",
}

napoleon_include_init_with_doc = True  # pylint: disable=invalid-name
napoleon_preprocess_types = True  # pylint: disable=invalid-name
napoleon_type_aliases = {  # pylint: disable=invalid-name
    "NDArray": "numpy.typing.NDArray",
    "DataFrame": "pandas.DataFrame",
}

intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable", None),
    "scipy": ("https://docs.scipy.org/doc/scipy", None),
    "sympy": ("https://docs.sympy.org/latest", None),
    "pandas": ("https://pandas.pydata.org/docs", None),
}


# -- Options for HTML output -------------------------------------------------

html_theme = "furo"  # pylint: disable=invalid-name
