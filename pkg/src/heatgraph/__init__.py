"""Stochastic completeness toolkit for weighted graphs."""
__version__ = "0.1.0"
