"""Certified 2-adic image containments for hyperelliptic Jacobians, with finite checks in Sp_2g(Z/2^e)."""

__version__ = "0.1.0"
