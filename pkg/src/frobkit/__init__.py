"""Exact endomorphism calculus for Frobenius algebras over Q."""

__version__ = "0.1.0"
