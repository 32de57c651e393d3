"""Grothendieck groups and graded isomorphism tests for Leavitt path algebras."""

__version__ = "0.1.0"
