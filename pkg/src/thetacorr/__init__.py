"""Exact combinatorics for the local theta correspondence."""

__version__ = "0.1.0"
