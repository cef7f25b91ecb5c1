"""Exact computation with partial comodules of finite-dimensional Hopf algebras."""

__version__ = "0.1.0"
