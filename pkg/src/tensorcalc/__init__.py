"""Combinatorial progressive planar graphs, diagrams and their evaluation."""

__version__ = "0.1.0"
