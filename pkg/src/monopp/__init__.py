"""Permutation-polynomial and monomial-graph verification toolkit over finite fields."""

__version__ = "0.1.0"
