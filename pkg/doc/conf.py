# -*- coding: utf-8 -*-
#
# thinfilm documentation build configuration file.
#
# Build with ``sphinx-build . _build``; needs sphinx, numpydoc and sphinx_rtd_theme.

import os
import sys

sys.path.insert(0, os.path.abspath('../'))

import sphinx_rtd_theme  # noqa: E402

from thinfilm import __version__  # noqa: E402

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.autosummary',
              'numpydoc',
              'sphinx.ext.mathjax',
              'sphinx.ext.viewcode']

templates_path = ['_templates']
autosummary_generate = True
numpydoc_show_class_members = False

source_suffix = '.rst'
master_doc = 'index'

project = u'thinfilm'
copyright = u'2026, thinfilm developers'
author = u'thinfilm developers'
version = '.'.join(__version__.split('.')[:2])
release = __version__

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']
pygments_style = 'sphinx'
add_module_names = False

html_theme = 'sphinx_rtd_theme'
html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]
html_theme_options = {
    'collapse_navigation': True,
    'navigation_depth': 3,
}
htmlhelp_basename = 'thinfilmdoc'

latex_documents = [
    (master_doc, 'thinfilm.tex', u'thinfilm Documentation', author, 'manual'),
]
man_pages = [
    (master_doc, 'thinfilm', u'thinfilm Documentation', [author], 1)
]
