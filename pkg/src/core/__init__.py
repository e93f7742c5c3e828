"""
Exact Geometry Kernel
=====================
Rational intervals, graph pieces, exact LP, convex cells and the relation
algebra of closed set-valued functions on [0,1].
"""

__version__ = "1.0.0"
