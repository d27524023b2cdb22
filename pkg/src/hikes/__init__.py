"""Exact walk/hike calculus on directed graphs."""

__version__ = "0.1.0"
