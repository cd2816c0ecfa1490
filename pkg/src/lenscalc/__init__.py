"""Exact computations for higher structure sets of fake lens spaces."""

__version__ = "0.1.0"
