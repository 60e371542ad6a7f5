"""Exact q-series toolkit for minimal-model characters and modular ODEs."""

__version__ = "0.1.0"
