"""Computable error bounds for Airy-type uniform asymptotic expansions at a
simple turning point, instantiated for Bessel functions of large order."""

__version__ = "0.1.0"
