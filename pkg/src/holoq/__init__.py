"""Exact group theory toolkit for flat manifolds and holonomy types."""

__version__ = "0.1.0"
