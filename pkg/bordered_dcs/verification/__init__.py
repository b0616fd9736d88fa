"""Numerical verification of the defining identities."""
