"""Exact search and certificate verification for small extremal-combinatorics problems."""

__version__ = "0.1.0"
