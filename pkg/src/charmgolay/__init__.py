"""Charm bracelets and the search for periodic Golay pairs."""

__version__ = "0.1.0"
