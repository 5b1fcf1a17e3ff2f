"""Exact Schrodinger propagators and dispersive decay on Z^d x G_F."""

__version__ = "0.1.0"
