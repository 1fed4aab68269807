# -*- coding: utf-8 -*-
#
# srbm-asymptotics documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing
# dir.

import os
import subprocess
import sys

sys.path.insert(0, os.path.abspath('../../'))

# -- General configuration ----------------------------------------------------

extensions = ['sphinx.ext.autodoc',
              'oslo_config.sphinxext']

import openstackdocstheme

html_theme = 'openstackdocs'
html_theme_path = [openstackdocstheme.get_html_theme_path()]

git_cmd = ["git", "rev-parse", "HEAD"]
try:
    gitsha = subprocess.Popen(
        git_cmd, stdout=subprocess.PIPE).communicate()[0].strip()
except OSError:
    gitsha = 'unknown'
pwd = os.getcwd()
html_context = {"pwd": pwd, "gitsha": gitsha}
html_last_updated_fmt = '%Y-%m-%d %H:%M'

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'srbm-asymptotics'
copyright = u'2017, The srbm-asymptotics Authors'

exclude_patterns = []
pygments_style = 'sphinx'
modindex_common_prefix = ["srbm_asymptotics."]

# -- Options for HTML output --------------------------------------------------

htmlhelp_basename = 'srbm-asymptoticsdoc'

# -- Options for LaTeX output -------------------------------------------------

latex_documents = [
    ('index', 'srbm-asymptotics.tex',
     u'srbm-asymptotics Documentation',
     u'The srbm-asymptotics Authors', 'manual'),
]
