# -*- coding: utf-8 -*-
#
# varbicolib documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import sys
import os

# The package lives one directory up.
sys.path.insert(0, os.path.abspath('..'))

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.viewcode',
    'sphinx.ext.imgmath',
    'sphinx.ext.napoleon',
    'sphinx.ext.autosummary'
]

autoclass_content = 'both'

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

# General information about the project.
project = u'varbicolib'
copyright = u'2026, varbicolib developer group'
author = u'varbicolib developer group'

import varbicolib
# The short X.Y version.
version = '%s' % (varbicolib.__version__)
# The full version, including alpha/beta/rc tags.
release = version

exclude_patterns = ['_build']

pygments_style = 'sphinx'

autosummary_generate = True

# -- Options for HTML output ----------------------------------------------

on_rtd = os.environ.get('READTHEDOCS') == 'True'
if on_rtd:
    html_theme = 'default'
else:
    html_theme = 'bizstyle'

html_static_path = ['_static']

htmlhelp_basename = 'varbicolib_doc'

# -- Options for LaTeX output ---------------------------------------------

latex_elements = {
}

latex_documents = [
  ('index', 'varbicolib.tex', u'varbicolib Documentation',
   u'varbicolib developer group', 'manual'),
]

# -- Options for manual page output ---------------------------------------

man_pages = [
    ('index', 'varbicolib', u'varbicolib Documentation',
     [u'varbicolib developer group'], 1)
]

# -- Options for Texinfo output -------------------------------------------

texinfo_documents = [
  ('index', 'varbicolib', u'varbicolib Documentation',
   u'varbicolib developer group', 'varbicolib',
   'Variational bicomplex and reconstruction of Lagrangians from presymplectic currents.',
   'Miscellaneous'),
]

# -- Options for Epub output ----------------------------------------------

epub_title = u'varbicolib'
epub_author = u'varbicolib developer group'
epub_publisher = u'varbicolib developer group'
epub_copyright = u'2026, varbicolib developer group'
epub_exclude_files = ['search.html']
