"""Cohomology of toric arrangements of root systems as Weyl group representations."""

__version__ = "0.1.0"
