"""Exact Brauer monoid and BMW algebra engine for type D_n."""

__version__ = "0.1.0"
