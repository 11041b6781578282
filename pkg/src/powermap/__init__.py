"""Cycle structure of the power map x -> x**a on finite groups."""

__version__ = "0.1.0"
