"""Exact lattice and divisor arithmetic for special cubic fourfolds."""

__version__ = "0.1.0"
