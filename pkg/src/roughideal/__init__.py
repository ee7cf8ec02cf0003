"""Exact computation of rough ideal limit, cluster and limit-point sets."""

__version__ = "0.1.0"
