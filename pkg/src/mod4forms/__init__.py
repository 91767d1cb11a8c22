"""Exact verification of a weak Hecke eigenform modulo 4 and its lift to level 128."""

__version__ = "0.1.0"
