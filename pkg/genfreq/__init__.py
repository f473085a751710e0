"""Geometric (multivector) frequency of signal vectors and its estimation."""

__version__ = "0.1.0"
