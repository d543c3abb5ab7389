"""Semantic units: a layered knowledge-graph engine."""
__version__ = "0.1.0"
