"""
Mahavier Engines
================
Finite Mahavier products, certificates and the gallery of named relations.
"""

from .mahavier_engine import ChainSystem, GSet, Semantics, build_gset, gset_connected
from .certificates import certify_continuum, cordiality_report
from .gallery import example, make_example

__all__ = [
    'ChainSystem',
    'GSet',
    'Semantics',
    'build_gset',
    'gset_connected',
    'certify_continuum',
    'cordiality_report',
    'example',
    'make_example',
]
