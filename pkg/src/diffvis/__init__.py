"""Exact diffuse-reflection visibility in simple polygons."""

__version__ = "0.1.0"
