"""Sums of algebraic dilates: exact constants, sumsets and lattice densities."""

__version__ = "0.1.0"
