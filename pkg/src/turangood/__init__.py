"""Exact verification toolkit for the P3 generalized Turan problem in K_{r+1}-free graphs."""

__version__ = "0.1.0"
