"""Exact PBW engine for diagonal braidings of Cartan type G2."""

__version__ = "0.1.0"
