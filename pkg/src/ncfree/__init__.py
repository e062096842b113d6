"""Exact combinatorics of free multiplicative convolution."""

__version__ = "0.1.0"
