"""Evolving Suggested Matching for edge-weighted online stochastic matching."""

__version__ = "0.1.0"
