"""Heterogeneous swarm simulator and metrics."""

__version__ = "0.1.0"
