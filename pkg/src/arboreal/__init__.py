"""Arboreal Galois certificates for quadratic maps over Q(t)."""

__version__ = "0.1.0"
