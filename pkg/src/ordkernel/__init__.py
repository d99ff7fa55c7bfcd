"""Desk-scale kernel for the theory of ordinals and sets of ordinals."""

__version__ = "0.1.0"
