"""Exact-arithmetic toolkit for type-A measure maps, multidegrees,
generalized orbital varieties, and preprojective-algebra flag counts."""

__version__ = "0.1.0"
