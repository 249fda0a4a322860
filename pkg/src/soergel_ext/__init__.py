"""Exact Ext/Hochschild engine for dihedral Soergel bimodules."""

__version__ = "0.1.0"
