"""Exact-arithmetic kernel for the monster Lie algebra at finite truncation."""

__version__ = "0.1.0"
