"""Counting meromorphic differentials on the projective line with residueless poles."""

__version__ = "0.1.0"
