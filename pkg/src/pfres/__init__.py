"""Pfaffian resolutions of grade three almost complete intersections."""

__version__ = "0.1.0"
