# -*- coding: utf-8 -*-
#
# inflab documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing dir.

import sys, os
import time

sys.path.append(os.path.join(os.path.split(__file__)[0], os.pardir, os.pardir))

import inflab

# -- General configuration -----------------------------------------------------

needs_sphinx = '1.5'

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.mathjax',
    'sphinx.ext.doctest',
    'sphinx.ext.todo',
    'sphinx.ext.coverage',
    'sphinx.ext.intersphinx',
    'sphinx.ext.viewcode',
]

todo_include_todos = True

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'pandas': ('https://pandas.pydata.org/docs/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
    'networkx': ('https://networkx.org/documentation/stable/', None),
}

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'inflab'
copyright_first_year = 2024
copyright_owners = u"The inflab developers"

current_year = time.localtime().tm_year
copyright_year_string = current_year if current_year == copyright_first_year else "{}-{}".format(
    copyright_first_year, current_year)
copyright = u'{}, {}. All rights reserved'.format(copyright_year_string, copyright_owners)

release = inflab.__version__
version = '.'.join(release.split('.')[:2])
author = "The inflab developers"

language = 'en'
exclude_patterns = ['_build']
pygments_style = 'sphinx'

autodoc_member_order = 'bysource'

# -- Options for HTML output ---------------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_static_path = []
html_show_sourcelink = False
html_search_language = 'en'
htmlhelp_basename = 'inflabdoc'

# -- Options for LaTeX, manual page and Texinfo output --------------------------

latex_elements = {}
latex_documents = [
    ('index', 'inflab.tex', u'inflab documentation', author, 'manual'),
]

man_pages = [
    ('index', 'inflab', u'inflab documentation', [author], 1)
]

texinfo_documents = [
    ('index', 'inflab', u'inflab documentation', author, 'inflab',
     'Numerical laboratory for the infinitesimal model with selection', 'Miscellaneous'),
]

nitpick_ignore = [
    ('py:exc', 'AssertionError'),
    ('py:exc', 'KeyError'),
    ('py:exc', 'OSError'),
    ('py:exc', 'RuntimeError'),
    ('py:exc', 'ValueError'),
    ('py:obj', 'str'),
    ('py:obj', 'list'),
    ('py:obj', 'tuple'),
    ('py:obj', 'int'),
    ('py:obj', 'float'),
    ('py:obj', 'bool'),
    ('py:obj', 'Mapping'),
]
