"""Exact arithmetic for cyclic cubic fields of prime conductor, their A4 and
A4-tilde extensions, and the associated ramification invariant, together with
class-group statistics against Cohen-Lenstra style predictions."""

__version__ = "0.1.0"
