"""Symplectic symmetric pairs and their extrinsic symplectic morphisms, in exact arithmetic."""

__version__ = "0.1.0"
