"""Exact tropical linear algebra."""
__version__ = "0.1.0"
