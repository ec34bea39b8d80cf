"""Truncated simplicial and semisimplicial sets, the free-degeneracy
construction, horn filling, homology and necklace-based mapping-space probes."""

__version__ = "0.1.0"
