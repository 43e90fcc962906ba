# -*- coding: utf-8 -*-
#
# Configuration file for the Sphinx documentation builder.
#
# This file does only contain a selection of the most common options. For a
# full list see the documentation:
# http://www.sphinx-doc.org/en/master/config

# -- Path setup --------------------------------------------------------------

# pylint: disable=invalid-name,redefined-builtin,wrong-import-position

import os
import sys

sys.path.insert(0, os.path.abspath(".."))

import rhtools

# -- Project information -----------------------------------------------------

project = "rh-tools"
copyright = "2024, rh-tools contributors"
author = "rh-tools contributors"

version = rhtools.get_version()
release = version


# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.mathjax",
    "sphinx.ext.napoleon",
    "myst_parser",
]

myst_enable_extensions = ["dollarmath"]

templates_path = ["_templates"]

source_suffix = [".md", ".rst"]

master_doc = "index"

language = "en"

exclude_patterns = ["build", "dist", ".venv"]

# -- Options for HTML output -------------------------------------------------

html_theme = "furo"
html_title = project

autodoc_typehints = "description"
autodoc_typehints_description_target = "documented"

autodoc_class_signature = "separated"

pygments_style = "zenburn"

# -- Options for HTMLHelp output ---------------------------------------------

htmlhelp_basename = "rh-toolsdoc"

# -- Options for manual page output ------------------------------------------

man_pages = [(master_doc, "rh-tools", "rh-tools Documentation", [author], 1)]
