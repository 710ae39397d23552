"""
Numerical laboratory for inverse random source problems: forward simulation
of far-field patterns driven by microlocally isotropic Gaussian sources, and
recovery of the source strength from far-field correlation data.
"""

from sourcelab.settings import VERSION

__version__ = VERSION
