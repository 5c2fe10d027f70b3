"""Exact algebra and numerics on the noncommutative plane [z, zb] = 2H."""

__version__ = "0.1.0"
