"""Exact toric laboratory for the reverse Khovanskii-Teissier inequality."""

__version__ = "0.1.0"
