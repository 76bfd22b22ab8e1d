"""Exact 5-torsion fields and Galois/cohomology tools for two CM elliptic curve families."""

__version__ = "0.1.0"
