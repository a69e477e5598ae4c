"""Slope and v-ord invariants of p-presentations, with blow-up transforms."""

__version__ = "0.1.0"
