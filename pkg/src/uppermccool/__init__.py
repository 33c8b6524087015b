"""Exact computations for the infinitesimal Alexander invariant of the upper McCool groups."""

__version__ = "0.1.0"
