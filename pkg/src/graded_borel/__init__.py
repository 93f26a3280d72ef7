"""Graded Borel subalgebras of finite-order gradings of simple Lie algebras."""

__version__ = "0.1.0"
