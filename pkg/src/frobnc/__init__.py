"""Frobenius nonclassical hypersurfaces over finite fields: arithmetic, families and exhaustive checks."""

__version__ = "0.1.0"
