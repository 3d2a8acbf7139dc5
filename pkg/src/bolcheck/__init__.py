"""Exact verification of recovery phenomena for sp(2n) and the Jacobi algebra."""

__version__ = "0.1.0"
