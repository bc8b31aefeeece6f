"""Wodzicki-residue spectral functionals for Dirac operators with torsion."""

__version__ = "0.1.0"
