"""Finite monads, their nerve double categories, and triple categories from distributive laws."""

__version__ = "0.1.0"
