"""Graphs with large second eigenvalue multiplicity: builders and spectral checks."""

__version__ = "0.1.0"

from .kernels import BACKEND  # noqa: E402
