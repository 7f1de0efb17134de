"""Verification toolkit for truncated oplax monoidal structures."""

__version__ = "0.1.0"
