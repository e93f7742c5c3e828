"""
Mahavier Toolkit - Tests
========================
pytest suite for the exact engine, the gallery, the raster oracle and the CLI.
"""
