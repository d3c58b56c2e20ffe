"""Self-orthogonal minimal linear codes from p-ary functions."""

__version__ = "0.1.0"
