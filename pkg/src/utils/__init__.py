"""
Utilities and Tools
===================
Configuration, logging setup, union-find, relation documents and the raster oracle.
"""

__all__ = []
