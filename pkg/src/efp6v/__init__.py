"""EFP engine for the free-fermion six-vertex model with domain-wall boundaries."""

__version__ = "0.1.0"
