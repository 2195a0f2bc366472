"""Cohomology operators and support varieties for periodic totally acyclic complexes."""

__version__ = "0.1.0"
