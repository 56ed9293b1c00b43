"""Projective Hermite constants of imaginary quadratic fields."""

__version__ = "0.1.0"
