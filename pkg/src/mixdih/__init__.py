"""Exact engine for a family of mixed dihedral 2-groups and the
semisymmetric, locally 2-arc-transitive graphs built from them."""

__version__ = "0.1.0"
