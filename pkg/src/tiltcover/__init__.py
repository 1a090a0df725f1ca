"""Exact computations with quiver representations, tilting and Galois coverings."""

__version__ = "0.1.0"
