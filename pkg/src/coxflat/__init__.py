"""Exact computations with deformed even-subgroup algebras of Coxeter groups."""

__version__ = "0.1.0"
