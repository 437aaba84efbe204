"""Batch figure rendering for the lidmas CSV artifacts.

This package is a pure reader/renderer: it consumes the sweep,
sensitivity, and boundary CSV files and never recomputes any physics.
The simulation package does not depend on it, and it does not depend on
the simulation package.
"""

__version__ = "0.1.0"
