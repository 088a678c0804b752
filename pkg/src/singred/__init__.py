"""Exact Betti-number calculator for circle quotients of sphere products and
weighted projective spaces, at regular and singular levels."""

__version__ = "0.1.0"
