"""Channels' matching: semantic information measures, R(G) functions, tests and mixture fitting."""

__version__ = "0.1.0"
