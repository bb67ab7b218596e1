"""Parameterized Picard-Vessiot groups of second-order linear ODEs."""

__version__ = "0.1.0"
