"""Exact combinatorics of plane branch singularities."""

__version__ = "0.1.0"
