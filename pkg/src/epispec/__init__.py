"""Solver for propositional epistemic logic programs."""

__version__ = "0.1.0"
