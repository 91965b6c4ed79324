"""Planar four-body central configurations with the bodies on two parallel lines."""

__version__ = "0.1.0"
