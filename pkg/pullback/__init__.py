"""Rank computations for Thurston pullback maps of marked branched covers."""

__version__ = "0.1.0"
