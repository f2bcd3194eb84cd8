"""Degree sets for Cartan-type mod-ell Galois images and ell-torsion of
elliptic curves with rational j-invariant."""

__version__ = "0.1.0"
