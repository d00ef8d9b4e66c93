"""Exact word, series and lattice computations for Milnor groups, 2-Engel certificates and doubled links."""

__version__ = "0.1.0"
