"""Diophantine D(n)-quadruples in Z[sqrt(d)] for square-free d = 2 (mod 4)."""

__version__ = "0.1.0"
