"""Inconsistency-tolerant query answering over prioritized DL-Lite knowledge bases."""

__version__ = "0.1.0"
