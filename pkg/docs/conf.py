# -*- coding: utf-8 -*-
#
# gaf-disturbance-classification documentation build configuration file.
import os
import sys

sys.path.insert(0, os.path.abspath('..'))

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.napoleon']
templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'gaf-disturbance-classification'
author = u'John James'
version = '0.1'
release = '0.1.0'

exclude_patterns = ['_build']
pygments_style = 'sphinx'

html_theme = 'default'
html_static_path = ['_static']
htmlhelp_basename = 'gaf-disturbance-classificationdoc'

latex_documents = [
    ('index', 'gaf-disturbance-classification.tex',
     u'gaf-disturbance-classification Documentation', author, 'manual'),
]

man_pages = [
    ('index', 'gaf-disturbance-classification',
     u'gaf-disturbance-classification Documentation', [author], 1)
]
