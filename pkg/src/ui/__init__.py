"""
Command Line Interface Components
=================================
Command dispatch (ui.commands), reports (ui.reports) and SVG rendering
(ui.svg_renderer).
"""

__all__ = []
