"""Certified compact routing schemes with one-round local verification."""

__version__ = "0.1.0"
