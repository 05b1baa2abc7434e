"""Recompute and machine-check the determination of primitive arithmetic
progressions (a^2, b^2, c^2, d^5) via genus-4 hyperelliptic curves."""

__version__ = "0.1.0"
